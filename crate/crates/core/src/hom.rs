//! The cell complex `Hom(G, K_n)` and its subcomplexes.
//!
//! A cell is a multihomomorphism: each vertex gets a nonempty set of colors
//! from `1..=n`, adjacent vertices get disjoint sets. Faces are pointwise
//! subsets, and a cell `η` is a product of simplices of dimension
//! `Σ_v (|η(v)| - 1)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const MAX_COLORS: u32 = 32;
pub const DEFAULT_CELL_CAP: usize = 200_000;

/// A set of colors from `1..=32`. Orders lexicographically by the ascending
/// color list, like [`VertexSet`].
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ColorSet(u32);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    /// `{1, ..., n}`.
    pub fn all(n: u32) -> ColorSet {
        if n >= 32 {
            ColorSet(u32::MAX)
        } else {
            ColorSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(color: u32) -> ColorSet {
        debug_assert!((1..=MAX_COLORS).contains(&color));
        ColorSet(1 << (color - 1))
    }

    pub fn from_bits(bits: u32) -> ColorSet {
        ColorSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, color: u32) -> bool {
        (1..=MAX_COLORS).contains(&color) && self.0 >> (color - 1) & 1 == 1
    }

    pub fn with(self, color: u32) -> ColorSet {
        ColorSet(self.0 | 1 << (color - 1))
    }

    pub fn without(self, color: u32) -> ColorSet {
        ColorSet(self.0 & !(1 << (color - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: ColorSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 | other.0)
    }

    pub fn difference(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & !other.0)
    }

    /// Colors in ascending order.
    pub fn iter(self) -> impl Iterator<Item = u32> + Clone {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let c = bits.trailing_zeros() + 1;
            bits &= bits - 1;
            Some(c)
        })
    }

    /// Nonempty subsets, in decreasing bit order.
    fn nonempty_subsets(self) -> impl Iterator<Item = ColorSet> {
        let full = self.0;
        let mut s = full;
        let mut done = full == 0;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let cur = s;
            s = s.wrapping_sub(1) & full;
            done = s == 0;
            Some(ColorSet(cur))
        })
    }
}

impl FromIterator<u32> for ColorSet {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        iter.into_iter().fold(ColorSet::EMPTY, ColorSet::with)
    }
}

impl Ord for ColorSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for ColorSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ColorSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// A multihomomorphism, one color set per vertex of the carrier graph.
///
/// The carrier and the number of colors live on the enclosing
/// [`CellComplex`]; a bare `MultiHom` is just the assignment. Cells compare
/// lexicographically vertex by vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiHom {
    colors: Vec<ColorSet>,
}

impl fmt::Debug for MultiHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.colors).finish()
    }
}

impl MultiHom {
    /// Checks the assignment against `g` and `n`: one nonempty color set per
    /// vertex, colors in range, disjoint across edges.
    pub fn new(g: &Graph, n: u32, colors: Vec<ColorSet>) -> Result<MultiHom> {
        if colors.len() != g.vertex_count() {
            return Err(Error::InvalidCell(format!(
                "{} color sets for {} vertices",
                colors.len(),
                g.vertex_count()
            )));
        }
        let cell = MultiHom { colors };
        cell.validate(g, n)?;
        Ok(cell)
    }

    /// Convenience constructor from color lists.
    pub fn from_lists(g: &Graph, n: u32, lists: &[&[u32]]) -> Result<MultiHom> {
        MultiHom::new(g, n, lists.iter().map(|l| l.iter().copied().collect()).collect())
    }

    fn validate(&self, g: &Graph, n: u32) -> Result<()> {
        for (v, c) in self.colors.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::InvalidCell(format!("empty color set at {}", g.label(v))));
            }
            if !c.is_subset(ColorSet::all(n)) {
                return Err(Error::InvalidCell(format!("color above {n} at {}", g.label(v))));
            }
        }
        for (u, v) in g.edges() {
            if !self.colors[u].is_disjoint(self.colors[v]) {
                return Err(Error::InvalidCell(format!(
                    "adjacent {} and {} share a color",
                    g.label(u),
                    g.label(v)
                )));
            }
        }
        Ok(())
    }

    pub fn colors(&self) -> &[ColorSet] {
        &self.colors
    }

    pub fn at(&self, v: usize) -> ColorSet {
        self.colors[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    /// `Σ_v (|η(v)| - 1)`.
    pub fn dim(&self) -> usize {
        self.colors.iter().map(|c| c.len() - 1).sum()
    }

    /// `Σ_v |η(v)|`.
    pub fn total_size(&self) -> usize {
        self.colors.iter().map(|c| c.len()).sum()
    }

    /// Pointwise inclusion `self(v) ⊆ other(v)` for all `v`.
    pub fn is_face_of(&self, other: &MultiHom) -> bool {
        self.colors.len() == other.colors.len()
            && self.colors.iter().zip(&other.colors).all(|(a, b)| a.is_subset(*b))
    }

    pub fn with_color(&self, v: usize, color: u32) -> MultiHom {
        let mut colors = self.colors.clone();
        colors[v] = colors[v].with(color);
        MultiHom { colors }
    }

    /// Codimension-one faces with incidence signs. Deleting color `x` from
    /// `η(v)` has sign `(-1)^(offset(v) + pos(x))`, where `offset(v)` is the
    /// dimension carried by vertices before `v` and `pos(x)` the 0-based rank
    /// of `x` in `η(v)`. Faces come in vertex order, then color order.
    pub fn codim1_faces(&self) -> Result<Vec<(MultiHom, i32)>> {
        if self.dim() == 0 {
            return Err(Error::InvalidCell("a 0-cell has no codimension-1 faces".into()));
        }
        let mut faces = Vec::with_capacity(self.total_size());
        let mut offset = 0;
        for (v, c) in self.colors.iter().enumerate() {
            if c.len() >= 2 {
                for (pos, x) in c.iter().enumerate() {
                    let mut colors = self.colors.clone();
                    colors[v] = c.without(x);
                    let sign = if (offset + pos) % 2 == 0 { 1 } else { -1 };
                    faces.push((MultiHom { colors }, sign));
                }
            }
            offset += c.len() - 1;
        }
        Ok(faces)
    }

    /// All faces (pointwise nonempty subsets), including `self`.
    pub fn all_faces(&self) -> Vec<MultiHom> {
        let mut out = vec![MultiHom { colors: Vec::with_capacity(self.colors.len()) }];
        for c in &self.colors {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    c.nonempty_subsets().map(move |s| {
                        let mut p = prefix.clone();
                        p.colors.push(s);
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// Serializable view keyed by vertex label, in vertex order.
    pub fn labelled<'a>(&'a self, g: &'a Graph) -> LabelledCell<'a> {
        LabelledCell { g, cell: self }
    }
}

/// A cell serialized as `{label: [colors...]}` in vertex order.
pub struct LabelledCell<'a> {
    g: &'a Graph,
    cell: &'a MultiHom,
}

impl Serialize for LabelledCell<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.cell.colors.len()))?;
        for (v, c) in self.cell.colors.iter().enumerate() {
            map.serialize_entry(self.g.label(v), c)?;
        }
        map.end()
    }
}

impl fmt::Display for LabelledCell<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (v, c) in self.cell.colors.iter().enumerate() {
            if v > 0 {
                f.write_str(", ")?;
            }
            let colors: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "{}:{{{}}}", self.g.label(v), colors.join(","))?;
        }
        f.write_str(")")
    }
}

/// A face-closed set of multihomomorphisms over one carrier graph and
/// color count.
#[derive(Clone, PartialEq, Eq)]
pub struct CellComplex {
    carrier: Graph,
    n: u32,
    cells: BTreeSet<MultiHom>,
}

impl fmt::Debug for CellComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CellComplex")
            .field("carrier", &self.carrier)
            .field("n", &self.n)
            .field("census", &self.census())
            .finish()
    }
}

impl CellComplex {
    /// Builds a complex from explicit cells, checking every cell and face closure.
    pub fn from_cells(carrier: Graph, n: u32, cells: impl IntoIterator<Item = MultiHom>) -> Result<CellComplex> {
        let cells: BTreeSet<MultiHom> = cells.into_iter().collect();
        for c in &cells {
            if c.vertex_count() != carrier.vertex_count() {
                return Err(Error::InvalidCell("cell over a different vertex set".into()));
            }
            c.validate(&carrier, n)?;
        }
        let cx = CellComplex { carrier, n, cells };
        cx.check_face_closed()?;
        Ok(cx)
    }

    pub(crate) fn from_parts_unchecked(carrier: Graph, n: u32, cells: BTreeSet<MultiHom>) -> CellComplex {
        CellComplex { carrier, n, cells }
    }

    pub fn carrier(&self) -> &Graph {
        &self.carrier
    }

    pub fn n_colors(&self) -> u32 {
        self.n
    }

    pub fn cells(&self) -> &BTreeSet<MultiHom> {
        &self.cells
    }

    pub fn into_cells(self) -> BTreeSet<MultiHom> {
        self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: &MultiHom) -> bool {
        self.cells.contains(cell)
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.cells.iter().map(MultiHom::dim).max()
    }

    /// Number of cells in each dimension `0..=dim`.
    pub fn census(&self) -> Vec<usize> {
        let mut counts = vec![0; self.dimension().map_or(0, |d| d + 1)];
        for c in &self.cells {
            counts[c.dim()] += 1;
        }
        counts
    }

    pub fn cells_of_dim(&self, k: usize) -> impl Iterator<Item = &MultiHom> {
        self.cells.iter().filter(move |c| c.dim() == k)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .map(|c| if c.dim() % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    pub fn check_face_closed(&self) -> Result<()> {
        for c in &self.cells {
            if c.dim() == 0 {
                continue;
            }
            for (f, _) in c.codim1_faces()? {
                if !self.cells.contains(&f) {
                    return Err(Error::NotFaceClosed(format!(
                        "{} is missing its face {}",
                        c.labelled(&self.carrier),
                        f.labelled(&self.carrier)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_face_closed(&self) -> bool {
        self.check_face_closed().is_ok()
    }

    /// Cells of `self` that are also in `other`, over the same carrier.
    pub fn intersection(&self, other: &CellComplex) -> CellComplex {
        CellComplex {
            carrier: self.carrier.clone(),
            n: self.n,
            cells: self.cells.intersection(&other.cells).cloned().collect(),
        }
    }

    /// The same cells read as a complex with `n - 1` colors; fails if any
    /// cell uses color `n`.
    pub fn forget_top_color(&self) -> Result<CellComplex> {
        let top = ColorSet::singleton(self.n);
        if let Some(c) = self.cells.iter().find(|c| c.colors.iter().any(|s| !s.is_disjoint(top))) {
            return Err(Error::Precondition(format!(
                "cell {} uses color {}",
                c.labelled(&self.carrier),
                self.n
            )));
        }
        Ok(CellComplex {
            carrier: self.carrier.clone(),
            n: self.n - 1,
            cells: self.cells.clone(),
        })
    }

    /// `{cell: [faces...]}` JSON dump of the cells, for diagnostics.
    pub fn to_json(&self) -> serde_json::Value {
        let cells: Vec<_> = self
            .cells
            .iter()
            .map(|c| serde_json::to_value(c.labelled(&self.carrier)).expect("plain data"))
            .collect();
        serde_json::json!({
            "vertices": self.carrier.labels(),
            "edges": self.carrier.edges().collect::<Vec<_>>(),
            "n": self.n,
            "cells": cells,
        })
    }
}

fn check_colors(n: u32) -> Result<()> {
    if n > MAX_COLORS {
        return Err(Error::TooManyColors(n));
    }
    Ok(())
}

/// Every multihomomorphism with `η(v) ⊆ allowed[v]`.
fn enumerate(g: &Graph, n: u32, allowed: &[ColorSet], cap: usize) -> Result<CellComplex> {
    fn go(
        g: &Graph,
        allowed: &[ColorSet],
        cap: usize,
        cur: &mut Vec<ColorSet>,
        out: &mut BTreeSet<MultiHom>,
    ) -> Result<()> {
        let v = cur.len();
        if v == allowed.len() {
            if out.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            out.insert(MultiHom { colors: cur.clone() });
            return Ok(());
        }
        let taken = g
            .neighbors(v)
            .iter()
            .filter(|&w| w < v)
            .fold(ColorSet::EMPTY, |acc, w| acc.union(cur[w]));
        for s in allowed[v].difference(taken).nonempty_subsets() {
            cur.push(s);
            go(g, allowed, cap, cur, out)?;
            cur.pop();
        }
        Ok(())
    }
    let mut out = BTreeSet::new();
    go(g, allowed, cap, &mut Vec::with_capacity(allowed.len()), &mut out)?;
    Ok(CellComplex {
        carrier: g.clone(),
        n,
        cells: out,
    })
}

/// `Hom(g, K_n)`: every multihomomorphism. Fails with
/// [`Error::CapExceeded`] rather than truncating. `n = 0` gives the empty
/// complex unless `g` has no vertices.
pub fn build_hom(g: &Graph, n: u32, cell_cap: usize) -> Result<CellComplex> {
    check_colors(n)?;
    enumerate(g, n, &vec![ColorSet::all(n); g.vertex_count()], cell_cap)
}

/// `Δ_I`: cells of `Hom(g, K_n)` where color `n` appears only at vertices of `i`.
pub fn build_delta_i(g: &Graph, n: u32, i: VertexSet, cell_cap: usize) -> Result<CellComplex> {
    check_colors(n)?;
    g.check_set(i)?;
    if !g.is_independent(i) {
        return Err(Error::NotIndependent(g.format_set(i)));
    }
    if n == 0 {
        return build_hom(g, 0, cell_cap);
    }
    let allowed: Vec<ColorSet> = (0..g.vertex_count())
        .map(|v| {
            if i.contains(v) {
                ColorSet::all(n)
            } else {
                ColorSet::all(n - 1)
            }
        })
        .collect();
    enumerate(g, n, &allowed, cell_cap)
}

/// `∩_{I ∈ family} Δ_I`, built as `Δ_{∩I}` and checked cell for cell
/// against the literal intersection.
pub fn intersect_delta(g: &Graph, n: u32, family: &[VertexSet], cell_cap: usize) -> Result<CellComplex> {
    let (&first, rest) = family
        .split_first()
        .ok_or_else(|| Error::Precondition("empty family of independent sets".into()))?;
    let meet = rest.iter().fold(first, |acc, s| acc.intersection(*s));
    let mut literal = build_delta_i(g, n, first, cell_cap)?;
    for &s in rest {
        literal = literal.intersection(&build_delta_i(g, n, s, cell_cap)?);
    }
    let by_formula = build_delta_i(g, n, meet, cell_cap)?;
    if by_formula != literal {
        return Err(Error::Inconsistency(format!(
            "Δ at the intersection {} differs from the intersection of the Δ_I",
            g.format_set(meet)
        )));
    }
    Ok(by_formula)
}

/// Order isomorphism between the face posets of a complex whose removed
/// coordinates are all `{n}` and its restriction to the remaining vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacePosetBijection {
    /// `(cell before restriction, cell after)`, sorted by the first entry.
    pub pairs: Vec<(MultiHom, MultiHom)>,
}

impl FacePosetBijection {
    pub fn forward(&self, cell: &MultiHom) -> Option<&MultiHom> {
        self.pairs
            .binary_search_by(|(a, _)| a.cmp(cell))
            .ok()
            .map(|i| &self.pairs[i].1)
    }
}

/// Drops the coordinates in `v_removed` from every cell of `delta_pp`, where
/// each of them must be exactly `{n}`. The result lives on
/// `carrier \ v_removed`; `i_prime` (in the original numbering) bounds where
/// color `n` may still occur. Returns the restricted complex and the
/// verified face-poset bijection.
pub fn restrict_iso(
    delta_pp: &CellComplex,
    v_removed: VertexSet,
    i_prime: VertexSet,
) -> Result<(CellComplex, FacePosetBijection)> {
    let g = delta_pp.carrier();
    let n = delta_pp.n_colors();
    g.check_set(v_removed)?;
    g.check_set(i_prime)?;
    if n == 0 && !v_removed.is_empty() {
        return Err(Error::Precondition("no color n to pin removed vertices to".into()));
    }
    let kept = g.vertices().difference(v_removed);
    let top = if n == 0 { ColorSet::EMPTY } else { ColorSet::singleton(n) };
    let mut pairs = Vec::with_capacity(delta_pp.len());
    for cell in delta_pp.cells() {
        if let Some(v) = v_removed.iter().find(|&v| cell.at(v) != top) {
            return Err(Error::Precondition(format!(
                "cell {} has η({}) ≠ {{{n}}}",
                cell.labelled(g),
                g.label(v)
            )));
        }
        if let Some(v) = kept.difference(i_prime).iter().find(|&v| !cell.at(v).is_disjoint(top)) {
            return Err(Error::Precondition(format!(
                "cell {} uses color {n} at {} outside I'",
                cell.labelled(g),
                g.label(v)
            )));
        }
        let image = MultiHom {
            colors: kept.iter().map(|v| cell.at(v)).collect(),
        };
        pairs.push((cell.clone(), image));
    }
    let target = g.induced_subgraph(kept)?;
    let cells: BTreeSet<MultiHom> = pairs.iter().map(|(_, b)| b.clone()).collect();
    if cells.len() != pairs.len() {
        return Err(Error::Inconsistency("restriction is not injective".into()));
    }
    let restricted = CellComplex {
        carrier: target,
        n,
        cells,
    };
    let bijection = FacePosetBijection { pairs };

    // order isomorphism: codim-1 faces correspond on both sides
    for (src, dst) in &bijection.pairs {
        if src.dim() != dst.dim() {
            return Err(Error::Inconsistency("restriction changed a cell dimension".into()));
        }
        if src.dim() == 0 {
            continue;
        }
        let mapped: BTreeSet<&MultiHom> = src
            .codim1_faces()?
            .iter()
            .map(|(f, _)| bijection.forward(f).ok_or_else(|| Error::NotFaceClosed("face outside Δ''".into())))
            .collect::<Result<_>>()?;
        let direct: Vec<MultiHom> = dst.codim1_faces()?.into_iter().map(|(f, _)| f).collect();
        if mapped.len() != direct.len() || direct.iter().any(|f| !mapped.contains(f)) {
            return Err(Error::Inconsistency(format!(
                "face relations of {} are not preserved",
                src.labelled(g)
            )));
        }
    }
    Ok((restricted, bijection))
}

/// Cells grouped by dimension, each group in basis order.
pub fn cells_by_dim(c: &CellComplex) -> BTreeMap<usize, Vec<&MultiHom>> {
    let mut out: BTreeMap<usize, Vec<&MultiHom>> = BTreeMap::new();
    for cell in c.cells() {
        out.entry(cell.dim()).or_default().push(cell);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{all_graphs, Format};

    const CAP: usize = DEFAULT_CELL_CAP;

    fn cell(g: &Graph, n: u32, lists: &[&[u32]]) -> MultiHom {
        MultiHom::from_lists(g, n, lists).unwrap()
    }

    #[test]
    fn census_examples() {
        let k1 = build_hom(&Graph::complete(1), 3, CAP).unwrap();
        assert_eq!(k1.census(), [3, 3, 1]);
        let k2 = build_hom(&Graph::complete(2), 3, CAP).unwrap();
        assert_eq!(k2.census(), [6, 6]);
        let k3 = build_hom(&Graph::complete(3), 3, CAP).unwrap();
        assert_eq!(k3.census(), [6]);
        assert!(build_hom(&Graph::complete(3), 2, CAP).unwrap().is_empty());
        let empty = build_hom(&Graph::edgeless(0), 2, CAP).unwrap();
        assert_eq!(empty.census(), [1]);
    }

    #[test]
    fn cap_is_an_error() {
        assert_eq!(build_hom(&Graph::complete(1), 3, 6).unwrap_err(), Error::CapExceeded { cap: 6 });
        assert!(build_hom(&Graph::complete(1), 3, 7).is_ok());
        assert!(matches!(build_hom(&Graph::complete(1), 33, CAP), Err(Error::TooManyColors(33))));
    }

    #[test]
    fn k2_counts_match_double_sum() {
        for n in 2..=5u32 {
            let mut expected = 0;
            for a in 1..1u32 << n {
                for b in 1..1u32 << n {
                    if a & b == 0 {
                        expected += 1;
                    }
                }
            }
            assert_eq!(build_hom(&Graph::complete(2), n, CAP).unwrap().len(), expected);
        }
    }

    #[test]
    fn cell_dims() {
        let k2 = Graph::complete(2);
        assert_eq!(cell(&k2, 3, &[&[1], &[2]]).dim(), 0);
        assert_eq!(cell(&k2, 3, &[&[1, 3], &[2]]).dim(), 1);
        assert_eq!(cell(&Graph::complete(1), 3, &[&[1, 2, 3]]).dim(), 2);
        assert!(MultiHom::from_lists(&k2, 3, &[&[1], &[1]]).is_err());
        assert!(MultiHom::from_lists(&k2, 3, &[&[1], &[]]).is_err());
        assert!(MultiHom::from_lists(&k2, 3, &[&[4], &[1]]).is_err());
    }

    #[test]
    fn codim1_face_signs() {
        let k2 = Graph::complete(2);
        let faces = cell(&k2, 3, &[&[1, 3], &[2]]).codim1_faces().unwrap();
        assert_eq!(
            faces,
            vec![(cell(&k2, 3, &[&[3], &[2]]), 1), (cell(&k2, 3, &[&[1], &[2]]), -1)]
        );
        let k1 = Graph::complete(1);
        let faces = cell(&k1, 2, &[&[1, 2]]).codim1_faces().unwrap();
        assert_eq!(faces, vec![(cell(&k1, 2, &[&[2]]), 1), (cell(&k1, 2, &[&[1]]), -1)]);

        let p3 = Graph::path(3);
        let faces = cell(&p3, 5, &[&[1, 2], &[3], &[4, 5]]).codim1_faces().unwrap();
        let signs: Vec<i32> = faces.iter().map(|f| f.1).collect();
        assert_eq!(signs, [1, -1, -1, 1]);
        assert_eq!(faces[2].0, cell(&p3, 5, &[&[1, 2], &[3], &[5]]));
        assert!(cell(&k2, 3, &[&[1], &[2]]).codim1_faces().is_err());
    }

    #[test]
    fn built_complexes_are_face_closed() {
        for n in 0..=4 {
            for g in all_graphs(n) {
                for colors in 1..=3 {
                    build_hom(&g, colors, CAP).unwrap().check_face_closed().unwrap();
                }
            }
        }
    }

    #[test]
    fn delta_i_examples() {
        let k2 = Graph::complete(2);
        let d = build_delta_i(&k2, 3, VertexSet::singleton(0), CAP).unwrap();
        assert_eq!(d.len(), 7);
        d.check_face_closed().unwrap();
        let d0 = build_delta_i(&k2, 3, VertexSet::EMPTY, CAP).unwrap();
        assert_eq!(d0.forget_top_color().unwrap(), build_hom(&k2, 2, CAP).unwrap());
        let k1 = Graph::edgeless(1);
        assert_eq!(
            build_delta_i(&k1, 2, VertexSet::singleton(0), CAP).unwrap(),
            build_hom(&k1, 2, CAP).unwrap()
        );
        assert!(matches!(
            build_delta_i(&k2, 3, k2.vertices(), CAP),
            Err(Error::NotIndependent(_))
        ));
    }

    #[test]
    fn every_cell_lies_in_some_delta_i() {
        for n in 0..=4 {
            for g in all_graphs(n) {
                let hom = build_hom(&g, 3, CAP).unwrap();
                let pieces: Vec<CellComplex> = g
                    .maximal_independent_sets()
                    .into_iter()
                    .map(|i| build_delta_i(&g, 3, i, CAP).unwrap())
                    .collect();
                for c in hom.cells() {
                    assert!(pieces.iter().any(|p| p.contains(c)));
                }
            }
        }
    }

    #[test]
    fn intersections() {
        let p3 = crate::graph::parse_graph("3 a b c\n0 1\n1 2", Format::EdgeList).unwrap();
        let ac: VertexSet = [0, 2].into_iter().collect();
        let b = VertexSet::singleton(1);
        let meet = intersect_delta(&p3, 3, &[ac, b], CAP).unwrap();
        assert_eq!(meet.forget_top_color().unwrap(), build_hom(&p3, 2, CAP).unwrap());
        assert_eq!(intersect_delta(&p3, 3, &[ac], CAP).unwrap(), build_delta_i(&p3, 3, ac, CAP).unwrap());
        assert!(intersect_delta(&p3, 3, &[], CAP).is_err());

        let c4 = Graph::cycle(4);
        let family: Vec<VertexSet> = c4.maximal_independent_sets();
        assert_eq!(
            intersect_delta(&c4, 3, &family, CAP).unwrap(),
            build_delta_i(&c4, 3, VertexSet::EMPTY, CAP).unwrap()
        );
    }

    #[test]
    fn restrict_examples() {
        let k1 = Graph::complete(1);
        let pinned = CellComplex::from_cells(k1.clone(), 2, [cell(&k1, 2, &[&[2]])]).unwrap();
        let (r, bij) = restrict_iso(&pinned, VertexSet::singleton(0), VertexSet::EMPTY).unwrap();
        assert_eq!(r.carrier().vertex_count(), 0);
        assert_eq!(r.len(), 1);
        assert_eq!(bij.pairs.len(), 1);

        let k2 = Graph::complete(2);
        let hex = build_hom(&k2, 3, CAP).unwrap();
        let (same, _) = restrict_iso(&hex, VertexSet::EMPTY, k2.vertices()).unwrap();
        assert_eq!(same, hex);

        assert!(matches!(
            restrict_iso(&hex, VertexSet::singleton(0), VertexSet::EMPTY),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn from_cells_checks_closure() {
        let k1 = Graph::complete(1);
        assert!(matches!(
            CellComplex::from_cells(k1.clone(), 2, [cell(&k1, 2, &[&[1, 2]])]),
            Err(Error::NotFaceClosed(_))
        ));
    }

    #[test]
    fn all_faces_of_a_cell() {
        let k2 = Graph::complete(2);
        let c = cell(&k2, 4, &[&[1, 2], &[3, 4]]);
        let faces = c.all_faces();
        assert_eq!(faces.len(), 9);
        assert!(faces.iter().all(|f| f.is_face_of(&c)));
    }

    #[test]
    fn color_set_order() {
        let a: ColorSet = [1, 3].into_iter().collect();
        let b: ColorSet = [2].into_iter().collect();
        assert!(a < b);
        assert!(ColorSet::singleton(1) < a);
    }
}
