//! Collapsing `Δ_I` onto `Δ_{I'}` restricted to `G \ (I \ I')`.
//!
//! For one vertex `v ∈ I \ I'` every cell `η` with `n ∉ η(v)` is paired with
//! `η*`, which adds `n` to `η(v)`. Pairs are removed largest cell first; at
//! each removal `η*` must be the only remaining cell strictly above `η`,
//! which is checked on every step. What survives has `η(v) = {n}`.

use std::cmp::Reverse;
use std::collections::BTreeSet;

use serde::ser::{SerializeMap, SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::hom::{build_delta_i, restrict_iso, CellComplex, FacePosetBijection, MultiHom};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseStep {
    /// The free face `η`.
    pub free: MultiHom,
    /// `η*`, its unique coface at removal time.
    pub cofree: MultiHom,
    pub vertex: usize,
}

#[derive(Debug, Clone)]
pub struct CollapseTrace {
    pub steps: Vec<CollapseStep>,
    pub start: CellComplex,
    pub end: CellComplex,
}

impl CollapseTrace {
    /// `[{removed_pair: [free, cofree], vertex: label}, ...]` with cells as
    /// `{label: [colors]}` objects in vertex order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TraceJson {
            g: self.start.carrier(),
            steps: &self.steps,
        })
        .expect("plain data")
    }
}

struct TraceJson<'a> {
    g: &'a Graph,
    steps: &'a [CollapseStep],
}

impl Serialize for TraceJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.steps.len()))?;
        for step in self.steps {
            seq.serialize_element(&StepJson { g: self.g, step })?;
        }
        seq.end()
    }
}

struct StepJson<'a> {
    g: &'a Graph,
    step: &'a CollapseStep,
}

impl Serialize for StepJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry(
            "removed_pair",
            &[self.step.free.labelled(self.g), self.step.cofree.labelled(self.g)],
        )?;
        map.serialize_entry("vertex", self.g.label(self.step.vertex))?;
        map.end()
    }
}

/// Orders the cells with `n ∉ η(v)` so that a cell never comes after one of
/// its faces: by decreasing `Σ_w |η(w)|`, then lexicographically.
pub fn lemma4_ordering(cells: &[MultiHom], v: usize, n: u32) -> Result<Vec<MultiHom>> {
    if let Some(c) = cells.iter().find(|c| c.at(v).contains(n)) {
        return Err(Error::Precondition(format!("cell {c:?} already has color {n} at vertex {v}")));
    }
    let mut out = cells.to_vec();
    out.sort_by(|a, b| (Reverse(a.total_size()), a).cmp(&(Reverse(b.total_size()), b)));
    Ok(out)
}

/// Runs the collapse of `Δ_I` (cells of `Hom(g, K_n)` with color `n` only on
/// `i`) one vertex of `i \ i_prime` at a time, in vertex order. Returns the
/// verified trace; `trace.end` is `Δ''`, where every processed vertex is
/// pinned to `{n}`.
pub fn lemma4_collapse(g: &Graph, n: u32, i: VertexSet, i_prime: VertexSet, cell_cap: usize) -> Result<CollapseTrace> {
    g.check_set(i)?;
    g.check_set(i_prime)?;
    if !i_prime.is_subset(i) {
        return Err(Error::Precondition(format!(
            "{} is not a subset of {}",
            g.format_set(i_prime),
            g.format_set(i)
        )));
    }
    let start = build_delta_i(g, n, i, cell_cap)?;
    let removed = i.difference(i_prime);
    if n == 0 && !removed.is_empty() {
        return Err(Error::Precondition("collapsing needs at least one color".into()));
    }
    let mut current: BTreeSet<MultiHom> = start.cells().clone();
    let mut steps = Vec::new();

    for v in removed {
        let unpinned: Vec<MultiHom> = current.iter().filter(|c| !c.at(v).contains(n)).cloned().collect();
        for free in lemma4_ordering(&unpinned, v, n)? {
            let cofree = free.with_color(v, n);
            let step = steps.len();
            if !current.contains(&free) || !current.contains(&cofree) {
                return Err(Error::FreeFaceViolation {
                    step,
                    detail: format!(
                        "{} or {} is no longer present",
                        free.labelled(g),
                        cofree.labelled(g)
                    ),
                });
            }
            // The complex stays face-closed, so any cell strictly above
            // `free` lies above some codimension-1 coface; a unique coface
            // therefore means a unique strict superset.
            if let Some(other) = codim1_cofaces(&free, n)
                .into_iter()
                .find(|c| *c != cofree && current.contains(c))
            {
                return Err(Error::FreeFaceViolation {
                    step,
                    detail: format!(
                        "{} has a second coface {} besides {}",
                        free.labelled(g),
                        other.labelled(g),
                        cofree.labelled(g)
                    ),
                });
            }
            current.remove(&free);
            current.remove(&cofree);
            steps.push(CollapseStep { free, cofree, vertex: v });
        }
        let pinned = crate::hom::ColorSet::singleton(n);
        if let Some(c) = current.iter().find(|c| c.at(v) != pinned) {
            return Err(Error::Inconsistency(format!(
                "after collapsing at {}, {} survives",
                g.label(v),
                c.labelled(g)
            )));
        }
    }

    let end = CellComplex::from_parts_unchecked(g.clone(), n, current);
    debug_assert!(end.is_face_closed());
    Ok(CollapseTrace { steps, start, end })
}

// Cells obtained by adding one color at one vertex; validity is left to the
// membership test against a complex.
fn codim1_cofaces(cell: &MultiHom, n: u32) -> Vec<MultiHom> {
    let mut out = Vec::new();
    for v in 0..cell.vertex_count() {
        for x in 1..=n {
            if !cell.at(v).contains(x) {
                out.push(cell.with_color(v, x));
            }
        }
    }
    out
}

/// Result of collapsing and then restricting: `Δ'` on `g \ (i \ i')`.
#[derive(Debug, Clone)]
pub struct CollapseOutcome {
    pub trace: CollapseTrace,
    pub delta_prime: CellComplex,
    pub bijection: FacePosetBijection,
}

/// [`lemma4_collapse`] followed by [`restrict_iso`] on the collapsed vertices.
pub fn collapse_to_delta_prime(
    g: &Graph,
    n: u32,
    i: VertexSet,
    i_prime: VertexSet,
    cell_cap: usize,
) -> Result<CollapseOutcome> {
    let trace = lemma4_collapse(g, n, i, i_prime, cell_cap)?;
    let (delta_prime, bijection) = restrict_iso(&trace.end, i.difference(i_prime), i_prime)?;
    Ok(CollapseOutcome {
        trace,
        delta_prime,
        bijection,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::all_graphs;
    use crate::hom::{build_hom, DEFAULT_CELL_CAP};
    use crate::homology::complex_homology;

    const CAP: usize = DEFAULT_CELL_CAP;

    fn cell(g: &Graph, n: u32, lists: &[&[u32]]) -> MultiHom {
        MultiHom::from_lists(g, n, lists).unwrap()
    }

    #[test]
    fn ordering_examples() {
        let k1 = Graph::complete(1);
        let big = cell(&k1, 3, &[&[1, 2]]);
        let small = cell(&k1, 3, &[&[1]]);
        assert_eq!(lemma4_ordering(&[small.clone(), big.clone()], 0, 3).unwrap(), [big, small]);

        let k2 = Graph::complete(2);
        let a = cell(&k2, 3, &[&[2], &[1]]);
        let b = cell(&k2, 3, &[&[1], &[2]]);
        assert_eq!(lemma4_ordering(&[a.clone(), b.clone()], 0, 3).unwrap(), [b, a]);
        assert!(lemma4_ordering(&[cell(&k2, 3, &[&[3], &[1]])], 0, 3).is_err());
    }

    #[test]
    fn k2_collapse() {
        let k2 = Graph::complete(2);
        let t = lemma4_collapse(&k2, 3, VertexSet::singleton(0), VertexSet::EMPTY, CAP).unwrap();
        assert_eq!((t.start.len(), t.steps.len(), t.end.len()), (7, 2, 3));
        let out = collapse_to_delta_prime(&k2, 3, VertexSet::singleton(0), VertexSet::EMPTY, CAP).unwrap();
        let rest = k2.remove(VertexSet::singleton(0)).unwrap();
        assert_eq!(rest.with_default_labels(), Graph::complete(1));
        let hom = build_hom(&rest, 2, CAP).unwrap();
        assert_eq!(out.delta_prime.forget_top_color().unwrap(), hom);
    }

    #[test]
    fn single_vertex_collapse() {
        let k1 = Graph::complete(1);
        let t = lemma4_collapse(&k1, 2, VertexSet::singleton(0), VertexSet::EMPTY, CAP).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.steps[0].free, cell(&k1, 2, &[&[1]]));
        assert_eq!(t.steps[0].cofree, cell(&k1, 2, &[&[1, 2]]));
        assert_eq!(t.end.cells().iter().collect::<Vec<_>>(), [&cell(&k1, 2, &[&[2]])]);
        let out = collapse_to_delta_prime(&k1, 2, VertexSet::singleton(0), VertexSet::EMPTY, CAP).unwrap();
        assert_eq!(out.delta_prime.forget_top_color().unwrap(), build_hom(&Graph::edgeless(0), 1, CAP).unwrap());
    }

    #[test]
    fn identity_collapse() {
        let p3 = Graph::path(3);
        let i: VertexSet = [0, 2].into_iter().collect();
        let t = lemma4_collapse(&p3, 3, i, i, CAP).unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(t.start, t.end);
        assert!(lemma4_collapse(&p3, 3, VertexSet::singleton(0), i, CAP).is_err());
        assert!(matches!(
            lemma4_collapse(&p3, 3, [0, 1].into_iter().collect(), VertexSet::EMPTY, CAP),
            Err(Error::NotIndependent(_))
        ));
    }

    #[test]
    fn trace_json_shape() {
        let k1 = Graph::complete(1);
        let t = lemma4_collapse(&k1, 2, VertexSet::singleton(0), VertexSet::EMPTY, CAP).unwrap();
        assert_eq!(
            t.to_json().to_string(),
            r#"[{"removed_pair":[{"0":[1]},{"0":[1,2]}],"vertex":"0"}]"#
        );
    }

    #[test]
    fn collapses_preserve_homology_and_hit_delta_prime() {
        for nv in 1..=4 {
            for g in all_graphs(nv) {
                for n in 1..=3 {
                    for i in g.maximal_independent_sets() {
                        // every subset of i as I'
                        for bits in 0..1u64 << i.len() {
                            let members = i.to_vec();
                            let i_prime: VertexSet =
                                (0..members.len()).filter(|b| bits >> b & 1 == 1).map(|b| members[b]).collect();
                            let out = collapse_to_delta_prime(&g, n, i, i_prime, CAP).unwrap();
                            let t = &out.trace;
                            assert_eq!(t.start.len() - 2 * t.steps.len(), t.end.len());
                            assert_eq!(t.start.euler_characteristic(), t.end.euler_characteristic());

                            let removed = i.difference(i_prime);
                            let sub = g.remove(removed).unwrap();
                            let kept = g.vertices().difference(removed).to_vec();
                            let local_i_prime: VertexSet = kept
                                .iter()
                                .enumerate()
                                .filter(|(_, &v)| i_prime.contains(v))
                                .map(|(j, _)| j)
                                .collect();
                            let target = build_delta_i(&sub, n, local_i_prime, CAP).unwrap();
                            assert_eq!(out.delta_prime, target);
                            if nv <= 3 {
                                assert!(complex_homology(&t.start)
                                    .unwrap()
                                    .same_homology(&complex_homology(&t.end).unwrap()));
                            }
                        }
                    }
                }
            }
        }
    }
}
