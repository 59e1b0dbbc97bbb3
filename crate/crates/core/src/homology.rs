//! Cellular chain complexes, reduced integral homology and homological
//! connectivity, plus the order-complex oracle used to cross-check them.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hom::{CellComplex, MultiHom};
use crate::snf::{smith_normal_form, SmithForm, SparseMatrix};

/// Free chain groups `C_0..=C_top` (by rank) and boundary maps between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    sizes: Vec<usize>,
    /// `boundaries[k - 1]` is `∂_k : C_k → C_{k-1}`.
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn new(sizes: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Result<ChainComplex> {
        if boundaries.len() + 1 != sizes.len().max(1) {
            return Err(Error::Inconsistency(format!(
                "{} chain groups need {} boundary maps, got {}",
                sizes.len(),
                sizes.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        for (k, d) in boundaries.iter().enumerate() {
            if d.ncols() != sizes[k + 1] || d.nrows() != sizes[k] {
                return Err(Error::Inconsistency(format!("∂_{} has the wrong shape", k + 1)));
            }
        }
        Ok(ChainComplex { sizes, boundaries })
    }

    /// Rank of `C_k` (0 past the top dimension).
    pub fn size(&self, k: usize) -> usize {
        self.sizes.get(k).copied().unwrap_or(0)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn top_dim(&self) -> Option<usize> {
        self.sizes.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.iter().all(|&s| s == 0)
    }

    /// `∂_k`, for `1 <= k <= top`.
    pub fn boundary(&self, k: usize) -> Option<&SparseMatrix> {
        k.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    /// Checks `∂_k ∘ ∂_{k+1} = 0` for every `k`.
    pub fn check_d_squared(&self) -> Result<()> {
        for k in 1..self.boundaries.len() {
            let prod = self.boundaries[k - 1]
                .checked_mul(&self.boundaries[k])
                .ok_or_else(|| Error::Inconsistency("overflow while composing boundaries".into()))?;
            if !prod.is_zero() {
                return Err(Error::Inconsistency(format!("∂_{} ∘ ∂_{} ≠ 0", k, k + 1)));
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.sizes
            .iter()
            .enumerate()
            .map(|(k, &s)| if k % 2 == 0 { s as i64 } else { -(s as i64) })
            .sum()
    }
}

/// Basis of `C_k` for the cellular chain complex: the `k`-cells in the
/// complex's (lexicographic) order.
pub fn cellular_basis(c: &CellComplex) -> Vec<Vec<&MultiHom>> {
    let mut bases: Vec<Vec<&MultiHom>> = vec![Vec::new(); c.dimension().map_or(0, |d| d + 1)];
    for cell in c.cells() {
        bases[cell.dim()].push(cell);
    }
    bases
}

/// Cellular chain complex of a face-closed complex, with incidence signs
/// from [`MultiHom::codim1_faces`].
pub fn chain_complex(c: &CellComplex) -> Result<ChainComplex> {
    let bases = cellular_basis(c);
    let index: Vec<HashMap<&MultiHom, u32>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, &cell)| (cell, i as u32)).collect())
        .collect();
    let mut boundaries = Vec::with_capacity(bases.len().saturating_sub(1));
    for k in 1..bases.len() {
        let columns = bases[k]
            .iter()
            .map(|cell| {
                cell.codim1_faces()?
                    .into_iter()
                    .map(|(f, s)| {
                        index[k - 1]
                            .get(&f)
                            .map(|&r| (r, s as i64))
                            .ok_or_else(|| Error::NotFaceClosed(format!("{f:?} missing")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        boundaries.push(SparseMatrix::from_columns(bases[k - 1].len(), columns));
    }
    ChainComplex::new(bases.iter().map(Vec::len).collect(), boundaries)
}

/// One homology group `Z^betti ⊕ Z/t_1 ⊕ ...`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct HomologyGroup {
    pub betti: usize,
    #[serde(serialize_with = "serialize_factors")]
    pub torsion: Vec<BigInt>,
}

fn serialize_factors<S: Serializer>(factors: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(factors.len()))?;
    for f in factors {
        match f.to_u64() {
            Some(v) => seq.serialize_element(&v)?,
            None => seq.serialize_element(&f.to_string())?,
        }
    }
    seq.end()
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn free(betti: usize) -> HomologyGroup {
        HomologyGroup {
            betti,
            torsion: Vec::new(),
        }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Homology in dimensions `0..=top`; reduced in dimension 0 when `reduced`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct HomologyReport {
    pub reduced: bool,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyReport {
    /// The group in dimension `k` (trivial past the top).
    pub fn group(&self, k: usize) -> HomologyGroup {
        self.groups.get(k).cloned().unwrap_or_default()
    }

    pub fn betti(&self, k: usize) -> usize {
        self.groups.get(k).map_or(0, |g| g.betti)
    }

    /// Equal groups in every dimension, ignoring trailing trivial groups.
    pub fn same_homology(&self, other: &HomologyReport) -> bool {
        let trim = |r: &HomologyReport| {
            let mut g = r.groups.clone();
            while g.last().is_some_and(HomologyGroup::is_trivial) {
                g.pop();
            }
            g
        };
        self.reduced == other.reduced && trim(self) == trim(other)
    }

    pub fn is_acyclic(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_trivial)
    }

    /// `Σ (-1)^k betti_k`.
    pub fn betti_euler(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(k, g)| if k % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) })
            .sum()
    }
}

/// Reduced homology `H̃_k` for `k = 0..=top`, through the Smith forms of the
/// boundary maps and the augmentation `C_0 → Z`.
pub fn reduced_homology(cc: &ChainComplex) -> Result<HomologyReport> {
    cc.check_d_squared()?;
    let Some(top) = cc.top_dim() else {
        return Ok(HomologyReport {
            reduced: true,
            groups: Vec::new(),
        });
    };
    if cc.is_empty() {
        return Ok(HomologyReport {
            reduced: true,
            groups: Vec::new(),
        });
    }
    // forms[k] is the Smith form of ∂_k, with ∂_0 the augmentation
    let forms: Vec<SmithForm> = (0..=top + 1)
        .into_par_iter()
        .map(|k| match k {
            0 => SmithForm {
                factors: vec![BigInt::from(1)],
                rank: 1,
            },
            k => cc.boundary(k).map(smith_normal_form).unwrap_or_default(),
        })
        .collect();
    let groups = (0..=top)
        .map(|k| HomologyGroup {
            betti: cc.size(k) - forms[k].rank - forms[k + 1].rank,
            torsion: forms[k + 1].torsion(),
        })
        .collect();
    Ok(HomologyReport { reduced: true, groups })
}

/// Unreduced `H_0` from a reduced report of a nonempty complex.
pub fn unreduced_h0(r: &HomologyReport, nonempty: bool) -> HomologyGroup {
    let mut g = r.group(0);
    if nonempty {
        g.betti += 1;
    }
    g
}

/// Connectivity level: `Finite(k)` or `Infinite` when every reduced group
/// vanishes. Orders with `Infinite` above every finite level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConnectivityLevel {
    Finite(i64),
    Infinite,
}

impl ConnectivityLevel {
    pub fn at_least(self, k: i64) -> bool {
        self >= ConnectivityLevel::Finite(k)
    }
}

impl fmt::Display for ConnectivityLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConnectivityLevel::Finite(k) => write!(f, "{k}"),
            ConnectivityLevel::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for ConnectivityLevel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ConnectivityLevel::Finite(k) => s.serialize_i64(*k),
            ConnectivityLevel::Infinite => s.serialize_str("inf"),
        }
    }
}

/// How a verdict was obtained. Only homology is ever used, so a level `k`
/// means reduced homology vanishes through `k`, not that `π_i` does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Certification {
    Homological,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConnectivityVerdict {
    pub level: ConnectivityLevel,
    pub certified: Certification,
}

impl ConnectivityVerdict {
    pub fn at_least(&self, k: i64) -> bool {
        self.level.at_least(k)
    }
}

/// `-2` for the empty complex, `-1` if `H̃_0 ≠ 0`, otherwise the largest `k`
/// with `H̃_i = 0` for all `i <= k` (`Infinite` if there is none).
pub fn homological_connectivity(r: &HomologyReport, nonempty: bool) -> ConnectivityVerdict {
    let level = if !nonempty {
        ConnectivityLevel::Finite(-2)
    } else {
        match r.groups.iter().position(|g| !g.is_trivial()) {
            Some(k) => ConnectivityLevel::Finite(k as i64 - 1),
            None => ConnectivityLevel::Infinite,
        }
    };
    ConnectivityVerdict {
        level,
        certified: Certification::Homological,
    }
}

/// Reduced homology of a cell complex through its cellular chain complex.
pub fn complex_homology(c: &CellComplex) -> Result<HomologyReport> {
    reduced_homology(&chain_complex(c)?)
}

pub fn complex_connectivity(c: &CellComplex) -> Result<(HomologyReport, ConnectivityVerdict)> {
    let r = complex_homology(c)?;
    let v = homological_connectivity(&r, !c.is_empty());
    Ok((r, v))
}

/// Simplicial chain complex of the order complex of the face poset: a
/// `k`-simplex is a chain `σ_0 < ... < σ_k` of cells under strict inclusion.
pub fn order_complex_chains(c: &CellComplex) -> Result<ChainComplex> {
    let cells: Vec<&MultiHom> = c.cells().iter().collect();
    let index: HashMap<&MultiHom, u32> = cells.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
    let below: Vec<Vec<u32>> = cells
        .iter()
        .map(|cell| {
            cell.all_faces()
                .iter()
                .filter(|f| f != cell)
                .map(|f| {
                    index
                        .get(f)
                        .copied()
                        .ok_or_else(|| Error::NotFaceClosed(format!("{f:?} missing")))
                })
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<_>>()?;

    // chains listed top-down while searching, stored bottom-up
    let mut chains: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    fn descend(top: u32, below: &[Vec<u32>], stack: &mut Vec<u32>, chains: &mut Vec<Vec<Vec<u32>>>) {
        stack.push(top);
        let k = stack.len() - 1;
        if chains.len() <= k {
            chains.resize_with(k + 1, Vec::new);
        }
        chains[k].push(stack.iter().rev().copied().collect());
        for &f in &below[top as usize] {
            descend(f, below, stack, chains);
        }
        stack.pop();
    }
    for top in 0..cells.len() as u32 {
        descend(top, &below, &mut stack, &mut chains);
    }
    for level in chains.iter_mut() {
        level.sort_unstable();
    }
    let index: Vec<HashMap<&[u32], u32>> = chains
        .iter()
        .map(|level| level.iter().enumerate().map(|(i, ch)| (ch.as_slice(), i as u32)).collect())
        .collect();
    let mut boundaries = Vec::new();
    for k in 1..chains.len() {
        let columns: Vec<Vec<(u32, i64)>> = chains[k]
            .par_iter()
            .map(|ch| {
                (0..ch.len())
                    .map(|drop| {
                        let face: Vec<u32> =
                            ch.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &x)| x).collect();
                        let row = index[k - 1][face.as_slice()];
                        (row, if drop % 2 == 0 { 1 } else { -1 })
                    })
                    .collect()
            })
            .collect();
        boundaries.push(SparseMatrix::from_columns(chains[k - 1].len(), columns));
    }
    ChainComplex::new(chains.iter().map(Vec::len).collect(), boundaries)
}

/// Reduced homology of the order complex; must agree with the cellular route.
pub fn order_complex_oracle(c: &CellComplex) -> Result<HomologyReport> {
    reduced_homology(&order_complex_chains(c)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{all_graphs, Graph, VertexSet};
    use crate::hom::{build_delta_i, build_hom, DEFAULT_CELL_CAP};

    fn hom(g: &Graph, n: u32) -> CellComplex {
        build_hom(g, n, DEFAULT_CELL_CAP).unwrap()
    }

    fn sphere(dim: usize) -> HomologyReport {
        let mut groups = vec![HomologyGroup::default(); dim + 1];
        groups[dim] = HomologyGroup::free(1);
        HomologyReport { reduced: true, groups }
    }

    #[test]
    fn hexagon_chain_complex() {
        let cc = chain_complex(&hom(&Graph::complete(2), 3)).unwrap();
        assert_eq!(cc.sizes(), [6, 6]);
        let d1 = cc.boundary(1).unwrap();
        for j in 0..6 {
            let col = d1.column(j);
            assert_eq!(col.len(), 2);
            assert_eq!(col.iter().map(|e| e.1).sum::<i64>(), 0);
        }
    }

    #[test]
    fn simplex_top_boundary() {
        let cc = chain_complex(&hom(&Graph::complete(1), 3)).unwrap();
        let d2 = cc.boundary(2).unwrap();
        assert_eq!(d2.to_dense(), vec![vec![1], vec![-1], vec![1]]);
        let points = chain_complex(&hom(&Graph::complete(3), 3)).unwrap();
        assert_eq!(points.sizes(), [6]);
        assert!(points.boundary(1).is_none());
    }

    #[test]
    fn homology_examples() {
        let hex = complex_homology(&hom(&Graph::complete(2), 3)).unwrap();
        assert_eq!(hex, sphere(1));
        for n in 1..=5 {
            assert!(complex_homology(&hom(&Graph::complete(1), n)).unwrap().is_acyclic());
        }
        let pts = complex_homology(&hom(&Graph::complete(3), 3)).unwrap();
        assert_eq!(pts.groups, vec![HomologyGroup::free(5)]);
    }

    #[test]
    fn connectivity_examples() {
        let (_, v) = complex_connectivity(&hom(&Graph::complete(2), 3)).unwrap();
        assert_eq!(v.level, ConnectivityLevel::Finite(0));
        let (_, v) = complex_connectivity(&hom(&Graph::complete(3), 2)).unwrap();
        assert_eq!(v.level, ConnectivityLevel::Finite(-2));
        let (r, v) = complex_connectivity(&hom(&Graph::complete(2), 4)).unwrap();
        assert_eq!(r, sphere(2));
        assert_eq!(v.level, ConnectivityLevel::Finite(1));
        let (_, v) = complex_connectivity(&hom(&Graph::complete(3), 3)).unwrap();
        assert_eq!(v.level, ConnectivityLevel::Finite(-1));
        let (_, v) = complex_connectivity(&hom(&Graph::complete(1), 3)).unwrap();
        assert_eq!(v.level, ConnectivityLevel::Infinite);
        assert!(v.at_least(100));
    }

    #[test]
    fn torsion_blocks_connectivity() {
        let r = HomologyReport {
            reduced: true,
            groups: vec![HomologyGroup::default(), HomologyGroup { betti: 0, torsion: vec![BigInt::from(2)] }],
        };
        assert_eq!(homological_connectivity(&r, true).level, ConnectivityLevel::Finite(0));
        assert_eq!(r.group(1).to_string(), "Z/2");
    }

    #[test]
    fn oracle_examples() {
        let hex = hom(&Graph::complete(2), 3);
        assert_eq!(order_complex_oracle(&hex).unwrap(), complex_homology(&hex).unwrap());
        let point = hom(&Graph::complete(1), 1);
        assert!(order_complex_oracle(&point).unwrap().is_acyclic());
        let delta = build_delta_i(&Graph::complete(2), 3, VertexSet::singleton(0), DEFAULT_CELL_CAP).unwrap();
        assert_eq!(delta.len(), 7);
        assert!(order_complex_oracle(&delta).unwrap().is_acyclic());
        assert!(complex_homology(&delta).unwrap().is_acyclic());
    }

    #[test]
    fn barycentric_subdivision_of_a_triangle() {
        let cc = order_complex_chains(&hom(&Graph::complete(1), 3)).unwrap();
        assert_eq!(cc.sizes(), [7, 12, 6]);
    }

    #[test]
    fn routes_agree_on_small_graphs() {
        for nv in 1..=3 {
            for g in all_graphs(nv) {
                for n in 1..=4 {
                    let c = hom(&g, n);
                    if c.len() > 400 {
                        continue;
                    }
                    let cc = chain_complex(&c).unwrap();
                    cc.check_d_squared().unwrap();
                    assert_eq!(cc.euler_characteristic(), c.euler_characteristic());
                    let cellular = reduced_homology(&cc).unwrap();
                    let simplicial = order_complex_oracle(&c).unwrap();
                    assert!(cellular.same_homology(&simplicial), "{g:?} n={n}");
                    if !c.is_empty() {
                        assert_eq!(cellular.betti_euler() + 1, c.euler_characteristic());
                    }
                }
            }
        }
    }

    #[test]
    fn display_groups() {
        assert_eq!(HomologyGroup::default().to_string(), "0");
        assert_eq!(HomologyGroup::free(1).to_string(), "Z");
        assert_eq!(
            HomologyGroup { betti: 2, torsion: vec![BigInt::from(2), BigInt::from(4)] }.to_string(),
            "Z^2 + Z/2 + Z/4"
        );
    }

    #[test]
    fn bad_complex_is_rejected() {
        let d1 = SparseMatrix::from_dense(&[vec![1, 1]]);
        let d2 = SparseMatrix::from_dense(&[vec![1], vec![0]]);
        let cc = ChainComplex::new(vec![1, 2, 1], vec![d1, d2]).unwrap();
        assert!(matches!(reduced_homology(&cc), Err(Error::Inconsistency(_))));
        assert!(ChainComplex::new(vec![1, 2], vec![]).is_err());
    }
}
