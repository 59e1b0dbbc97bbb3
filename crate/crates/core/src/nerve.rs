//! Cover of `Hom(G, K_n)` by the subcomplexes `Δ_I`, one per maximal
//! independent set `I`, and the connectivity verifier built on it.
//!
//! Any intersection of several `Δ_I` is `Δ_J` for `J` the intersection of
//! the index sets, so intersections are enumerated by their distinct `J`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::collapse::collapse_to_delta_prime;
use crate::covering::chi_dot;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::hom::{build_delta_i, build_hom, CellComplex};
use crate::homology::{
    chain_complex, complex_connectivity, homological_connectivity, reduced_homology, ConnectivityVerdict,
    HomologyReport,
};

#[derive(Debug, Clone)]
pub struct NerveDecomposition {
    pub graph: Graph,
    pub n: u32,
    pub whole: CellComplex,
    /// `(I, Δ_I)` for every maximal independent `I`, in lexicographic order.
    pub family: Vec<(VertexSet, CellComplex)>,
    /// `Δ_J` for every distinct `J` arising as an intersection of two or more members.
    pub intersections: BTreeMap<VertexSet, CellComplex>,
}

/// Distinct values of `I_1 ∩ ... ∩ I_k` over subfamilies with `k >= 2`.
pub fn intersection_closure(family: &[VertexSet]) -> BTreeSet<VertexSet> {
    let mut closed = BTreeSet::new();
    for (a, &x) in family.iter().enumerate() {
        for &y in &family[a + 1..] {
            closed.insert(x.intersection(y));
        }
    }
    let mut frontier: Vec<VertexSet> = closed.iter().copied().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in frontier {
            for &i in family {
                let y = x.intersection(i);
                if closed.insert(y) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    closed
}

pub fn nerve_cover(g: &Graph, n: u32, cell_cap: usize) -> Result<NerveDecomposition> {
    let whole = build_hom(g, n, cell_cap)?;
    let sets = g.maximal_independent_sets();
    let family: Vec<(VertexSet, CellComplex)> = sets
        .par_iter()
        .map(|&i| Ok((i, build_delta_i(g, n, i, cell_cap)?)))
        .collect::<Result<_>>()?;
    let keys: Vec<VertexSet> = intersection_closure(&sets).into_iter().collect();
    let intersections = keys
        .par_iter()
        .map(|&j| Ok((j, build_delta_i(g, n, j, cell_cap)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;

    let covered: BTreeSet<_> = family.iter().flat_map(|(_, d)| d.cells().iter()).collect();
    if covered.len() != whole.len() || whole.cells().iter().any(|c| !covered.contains(c)) {
        return Err(Error::Inconsistency("the Δ_I do not cover Hom(G, K_n)".into()));
    }
    Ok(NerveDecomposition {
        graph: g.clone(),
        n,
        whole,
        family,
        intersections,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PieceKind {
    Member,
    Intersection,
}

#[derive(Debug, Clone, Serialize)]
pub struct PieceVerdict {
    pub kind: PieceKind,
    pub set: Vec<String>,
    pub cells: usize,
    pub required_level: i64,
    pub verdict: ConnectivityVerdict,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct NerveCheck {
    pub m: i64,
    pub satisfied: bool,
    pub pieces: Vec<PieceVerdict>,
}

fn labels(g: &Graph, s: VertexSet) -> Vec<String> {
    s.iter().map(|v| g.label(v).to_string()).collect()
}

/// Every `Δ_I` must be homologically `m`-connected and every intersection of
/// two or more of them `(m-1)`-connected.
pub fn check_nerve_hypotheses(d: &NerveDecomposition, m: i64) -> Result<NerveCheck> {
    let work: Vec<(PieceKind, VertexSet, &CellComplex, i64)> = d
        .family
        .iter()
        .map(|(i, c)| (PieceKind::Member, *i, c, m))
        .chain(d.intersections.iter().map(|(j, c)| (PieceKind::Intersection, *j, c, m - 1)))
        .collect();
    let pieces = work
        .par_iter()
        .map(|&(kind, set, c, required)| {
            let (_, verdict) = complex_connectivity(c)?;
            Ok(PieceVerdict {
                kind,
                set: labels(&d.graph, set),
                cells: c.len(),
                required_level: required,
                verdict,
                ok: verdict.at_least(required),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NerveCheck {
        m,
        satisfied: pieces.iter().all(|p| p.ok),
        pieces,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Depth {
    Direct,
    Inductive,
}

/// A piece of the cover checked against `Hom(G \ J, K_{n-1})`.
#[derive(Debug, Clone, Serialize)]
pub struct InductivePiece {
    pub kind: PieceKind,
    pub set: Vec<String>,
    pub cells: usize,
    pub verdict: ConnectivityVerdict,
    pub required_level: i64,
    pub reduced_graph_cells: usize,
    pub reduced_graph_verdict: ConnectivityVerdict,
    pub collapse_steps: usize,
    /// The collapse lands exactly on `Hom(G \ J, K_{n-1})`.
    pub collapse_matches: bool,
    pub homology_matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl GraphSummary {
    pub fn of(g: &Graph) -> GraphSummary {
        GraphSummary {
            vertices: g.labels().to_vec(),
            edges: g
                .edges()
                .map(|(u, v)| [g.label(u).to_string(), g.label(v).to_string()])
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub graph: GraphSummary,
    pub n: u32,
    pub mode: Depth,
    pub chi_dot: usize,
    pub max_degree: usize,
    /// `n - chi_dot - 1`.
    pub claimed_level: i64,
    /// `n - max_degree - 2`.
    pub corollary_level: i64,
    pub cells: usize,
    pub homology: HomologyReport,
    pub verdict: ConnectivityVerdict,
    /// Inductive mode only.
    pub pieces: Vec<InductivePiece>,
    /// Inductive mode only; `m` is `claimed_level` unless overridden.
    pub nerve_m: Option<i64>,
    pub nerve_hypotheses_satisfied: Option<bool>,
    pub findings: Vec<String>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.findings.is_empty()
    }
}

/// Checks `Hom(g, K_n)` against `n - chi_dot(g) - 1` (and the weaker
/// `n - d - 2`). Inductive mode also replays the cover argument: each `Δ_I`
/// and each intersection `Δ_J` is collapsed onto `Hom(g \ J, K_{n-1})` and
/// compared with it, and the nerve hypotheses are checked at `m`
/// (default `claimed_level`).
///
/// A level below the claim is recorded in `findings`; it would point at a
/// bug here, not in the theorem.
pub fn verify_theorem(
    g: &Graph,
    n: u32,
    depth: Depth,
    cell_cap: usize,
    nerve_m: Option<i64>,
) -> Result<TheoremReport> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let chi = chi_dot(g)?.value;
    let d = g.max_degree();
    let claimed_level = n as i64 - chi as i64 - 1;
    let corollary_level = n as i64 - d as i64 - 2;
    let whole = build_hom(g, n, cell_cap)?;
    let homology = reduced_homology(&chain_complex(&whole)?)?;
    let verdict = homological_connectivity(&homology, !whole.is_empty());

    let mut findings = Vec::new();
    if !verdict.at_least(claimed_level) {
        findings.push(format!(
            "verdict-below-claim: homological connectivity {} < n - chi_dot - 1 = {claimed_level}",
            verdict.level
        ));
    }
    if !verdict.at_least(corollary_level) {
        findings.push(format!(
            "verdict-below-corollary: homological connectivity {} < n - d - 2 = {corollary_level}",
            verdict.level
        ));
    }
    if corollary_level > claimed_level {
        findings.push(format!("chi_dot = {chi} exceeds max degree + 1 = {}", d + 1));
    }

    let mut report = TheoremReport {
        graph: GraphSummary::of(g),
        n,
        mode: depth,
        chi_dot: chi,
        max_degree: d,
        claimed_level,
        corollary_level,
        cells: whole.len(),
        homology,
        verdict,
        pieces: Vec::new(),
        nerve_m: None,
        nerve_hypotheses_satisfied: None,
        findings,
    };
    if depth == Depth::Direct {
        return Ok(report);
    }

    let m = nerve_m.unwrap_or(claimed_level);
    let cover = nerve_cover(g, n, cell_cap)?;
    let nerve = check_nerve_hypotheses(&cover, m)?;
    let work: Vec<(PieceKind, VertexSet, &CellComplex, i64)> = cover
        .family
        .iter()
        .map(|(i, c)| (PieceKind::Member, *i, c, m))
        .chain(cover.intersections.iter().map(|(j, c)| (PieceKind::Intersection, *j, c, m - 1)))
        .collect();
    let pieces = work
        .par_iter()
        .map(|&(kind, set, piece, required)| inductive_piece(g, n, kind, set, piece, required, cell_cap))
        .collect::<Result<Vec<_>>>()?;

    for p in &pieces {
        let name = format!("{:?} [{}]", p.kind, p.set.join(" "));
        if !p.collapse_matches {
            report
                .findings
                .push(format!("collapse of {name} does not land on Hom(G \\ J, K_(n-1))"));
        }
        if !p.homology_matches {
            report
                .findings
                .push(format!("homology of {name} differs from Hom(G \\ J, K_(n-1))"));
        }
    }
    if !nerve.satisfied {
        for p in nerve.pieces.iter().filter(|p| !p.ok) {
            report.findings.push(format!(
                "nerve hypothesis fails at m = {m}: {:?} [{}] has level {} < {}",
                p.kind,
                p.set.join(" "),
                p.verdict.level,
                p.required_level
            ));
        }
    }
    report.pieces = pieces;
    report.nerve_m = Some(m);
    report.nerve_hypotheses_satisfied = Some(nerve.satisfied);
    Ok(report)
}

fn inductive_piece(
    g: &Graph,
    n: u32,
    kind: PieceKind,
    set: VertexSet,
    piece: &CellComplex,
    required: i64,
    cell_cap: usize,
) -> Result<InductivePiece> {
    let (homology, verdict) = complex_connectivity(piece)?;
    let reduced_graph = g.remove(set)?;
    let target = build_hom(&reduced_graph, n - 1, cell_cap)?;
    let (target_homology, target_verdict) = complex_connectivity(&target)?;
    let outcome = collapse_to_delta_prime(g, n, set, VertexSet::EMPTY, cell_cap)?;
    let collapse_matches = outcome
        .delta_prime
        .forget_top_color()
        .is_ok_and(|c| c == target);
    Ok(InductivePiece {
        kind,
        set: labels(g, set),
        cells: piece.len(),
        verdict,
        required_level: required,
        reduced_graph_cells: target.len(),
        reduced_graph_verdict: target_verdict,
        collapse_steps: outcome.trace.steps.len(),
        collapse_matches,
        homology_matches: homology.same_homology(&target_homology) && !piece.is_empty() == !target.is_empty(),
    })
}

/// Complex cells and boundary matrices of `Hom(g, K_n)`, dumped alongside a
/// failing report.
pub fn finding_artifacts(g: &Graph, n: u32, cell_cap: usize) -> Result<serde_json::Value> {
    let whole = build_hom(g, n, cell_cap)?;
    let cc = chain_complex(&whole)?;
    let boundaries: Vec<_> = (1..cc.sizes().len())
        .map(|k| {
            let d = cc.boundary(k).expect("in range");
            let cols: Vec<Vec<(u32, i64)>> = (0..d.ncols()).map(|j| d.column(j).to_vec()).collect();
            serde_json::json!({ "dim": k, "rows": d.nrows(), "columns": cols })
        })
        .collect();
    Ok(serde_json::json!({ "complex": whole.to_json(), "boundaries": boundaries }))
}
