//! Coverings and the covering number `chi_dot`.
//!
//! A covering of `G` is an ordered partition `I_1, ..., I_k` of `V(G)` in
//! which every `I_i` is a maximal independent set of the subgraph induced on
//! `I_i ∪ ... ∪ I_k`. `chi_dot(G)` is the largest `k` any covering attains.
//!
//! Coverings of a subgraph `G \ S` are written in the vertex numbering of
//! `G` itself (every set avoids `S`), so they can be extended in place.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Independence, VertexSet};

/// `chi_dot` memoizes over vertex subsets, so it is capped here.
pub const CHI_DOT_MAX_VERTICES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Covering {
    sets: Vec<VertexSet>,
}

impl Covering {
    /// Wraps `sets` after checking they form a covering of `g`.
    pub fn new(g: &Graph, sets: Vec<VertexSet>) -> Result<Covering> {
        if is_covering(g, &sets)? {
            Ok(Covering { sets })
        } else {
            Err(Error::InvalidCovering(describe(g, &sets)))
        }
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn into_sets(self) -> Vec<VertexSet> {
        self.sets
    }

    /// Labelled rendering such as `[a c][b]`.
    pub fn display<'a>(&'a self, g: &'a Graph) -> impl fmt::Display + 'a {
        DisplayCovering { g, sets: &self.sets }
    }
}

struct DisplayCovering<'a> {
    g: &'a Graph,
    sets: &'a [VertexSet],
}

impl fmt::Display for DisplayCovering<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.sets {
            f.write_str(&self.g.format_set(*s))?;
        }
        Ok(())
    }
}

fn describe(g: &Graph, sets: &[VertexSet]) -> String {
    DisplayCovering { g, sets }.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiDotResult {
    pub value: usize,
    pub witness: Covering,
}

impl ChiDotResult {
    /// Witness sets as lists of vertex labels.
    pub fn witness_labels(&self, g: &Graph) -> Vec<Vec<String>> {
        self.witness
            .sets()
            .iter()
            .map(|s| s.iter().map(|v| g.label(v).to_string()).collect())
            .collect()
    }
}

#[derive(Serialize)]
struct ChiDotJson<'a> {
    value: usize,
    witness: Vec<Vec<&'a str>>,
}

impl ChiDotResult {
    pub fn to_json(&self, g: &Graph) -> serde_json::Value {
        let witness = self
            .witness
            .sets()
            .iter()
            .map(|s| s.iter().map(|v| g.label(v)).collect())
            .collect();
        serde_json::to_value(ChiDotJson {
            value: self.value,
            witness,
        })
        .expect("plain data serializes")
    }
}

/// Whether `sets` is a covering of the subgraph induced on `within`.
/// Sets must be nonempty, so the empty graph has only the empty covering.
pub fn is_covering_within(g: &Graph, within: VertexSet, sets: &[VertexSet]) -> bool {
    let mut rest = within;
    for &s in sets {
        if s.is_empty() || !s.is_subset(rest) || !g.is_maximal_independent_within(rest, s) {
            return false;
        }
        rest = rest.difference(s);
    }
    rest.is_empty()
}

pub fn is_covering(g: &Graph, sets: &[VertexSet]) -> Result<bool> {
    for &s in sets {
        g.check_set(s)?;
    }
    Ok(is_covering_within(g, g.vertices(), sets))
}

/// Exact `chi_dot(g)` with a witness covering.
///
/// Uses `chi_dot(∅) = 0` and `chi_dot(G) = 1 + max_I chi_dot(G \ I)` over
/// maximal independent sets `I`, memoized on the remaining vertex subset.
/// Ties go to the lexicographically smallest `I`.
pub fn chi_dot(g: &Graph) -> Result<ChiDotResult> {
    let n = g.vertex_count();
    if n > CHI_DOT_MAX_VERTICES {
        return Err(Error::TooManyVertices {
            got: n,
            max: CHI_DOT_MAX_VERTICES,
        });
    }
    let mut memo: Vec<Option<(usize, VertexSet)>> = vec![None; 1 << n];
    let value = chi_dot_within(g, g.vertices(), &mut memo);
    let mut sets = Vec::with_capacity(value);
    let mut rest = g.vertices();
    while !rest.is_empty() {
        let (_, best) = memo[rest.bits() as usize].expect("visited during the search");
        sets.push(best);
        rest = rest.difference(best);
    }
    debug_assert_eq!(sets.len(), value);
    Ok(ChiDotResult {
        value,
        witness: Covering { sets },
    })
}

fn chi_dot_within(g: &Graph, rest: VertexSet, memo: &mut [Option<(usize, VertexSet)>]) -> usize {
    if rest.is_empty() {
        return 0;
    }
    if let Some((v, _)) = memo[rest.bits() as usize] {
        return v;
    }
    let mut best: Option<(usize, VertexSet)> = None;
    for i in g.maximal_independent_sets_within(rest) {
        let v = 1 + chi_dot_within(g, rest.difference(i), memo);
        if best.is_none_or(|(b, _)| v > b) {
            best = Some((v, i));
        }
    }
    memo[rest.bits() as usize] = best;
    best.expect("a nonempty graph has a maximal independent set").0
}

/// Turns a partition into independent sets into a covering: parts are taken
/// in order, each restricted to the remaining vertices and greedily enlarged
/// (candidates in vertex order) to a maximal independent set there. Parts
/// that end up empty are dropped.
pub fn partition_to_covering(g: &Graph, parts: &[VertexSet]) -> Result<Covering> {
    let mut seen = VertexSet::EMPTY;
    for &p in parts {
        g.check_set(p)?;
        if !p.is_disjoint(seen) {
            return Err(Error::InvalidPartition(format!(
                "{} overlaps an earlier part",
                g.format_set(p)
            )));
        }
        if !g.is_independent(p) {
            return Err(Error::NotIndependent(g.format_set(p)));
        }
        seen = seen.union(p);
    }
    if seen != g.vertices() {
        return Err(Error::InvalidPartition(format!(
            "parts miss {}",
            g.format_set(g.vertices().difference(seen))
        )));
    }

    let mut rest = g.vertices();
    let mut sets = Vec::new();
    for &p in parts {
        let mut cur = p.intersection(rest);
        if cur.is_empty() {
            continue;
        }
        for v in rest.difference(cur) {
            if g.neighbors(v).is_disjoint(cur) {
                cur.insert(v);
            }
        }
        sets.push(cur);
        rest = rest.difference(cur);
    }
    debug_assert!(is_covering_within(g, g.vertices(), &sets));
    Ok(Covering { sets })
}

/// Extends a covering of `g \ {v}` to one of `g` with at least as many sets:
/// `v` joins the first set holding none of its neighbours. When every set
/// holds a neighbour, `{v}` becomes a new set: in front if `v` is adjacent to
/// all other vertices, at the back otherwise (a leading `{v}` would not be
/// maximal).
pub fn lemma2_extend(g: &Graph, v: usize, cov: &[VertexSet]) -> Result<Covering> {
    if v >= g.vertex_count() {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    for &s in cov {
        g.check_set(s)?;
    }
    if !is_covering_within(g, g.vertices().without(v), cov) {
        return Err(Error::InvalidCovering(format!(
            "{} is not a covering of the graph minus {}",
            describe(g, cov),
            g.label(v)
        )));
    }
    let mut sets = cov.to_vec();
    match sets.iter().position(|s| g.neighbors(v).is_disjoint(*s)) {
        Some(j) => sets[j].insert(v),
        // {v} leads only if it is maximal in g, i.e. v sees every other vertex
        None if g.neighbors(v) == g.vertices().without(v) => sets.insert(0, VertexSet::singleton(v)),
        None => sets.push(VertexSet::singleton(v)),
    }
    debug_assert!(is_covering_within(g, g.vertices(), &sets));
    Ok(Covering { sets })
}

/// `[i] ++ cov`, a covering of `g` with one more set than the covering `cov`
/// of `g \ i`.
pub fn lemma3_prepend(g: &Graph, i: VertexSet, cov: &[VertexSet]) -> Result<Covering> {
    if g.independence_status(i)? != Independence::MaximalIndependent {
        return Err(Error::NotMaximalIndependent(g.format_set(i)));
    }
    for &s in cov {
        g.check_set(s)?;
    }
    if !is_covering_within(g, g.vertices().difference(i), cov) {
        return Err(Error::InvalidCovering(format!(
            "{} is not a covering of the graph minus {}",
            describe(g, cov),
            g.format_set(i)
        )));
    }
    let mut sets = Vec::with_capacity(cov.len() + 1);
    sets.push(i);
    sets.extend_from_slice(cov);
    Ok(Covering { sets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{all_graphs, parse_graph, Format};

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn p3() -> Graph {
        parse_graph("3 a b c\n0 1\n1 2", Format::EdgeList).unwrap()
    }

    // Every covering, built straight from the definition: the first set is
    // any nonempty subset of what remains that is independent and dominates
    // the rest.
    fn brute_force_max_covering(g: &Graph) -> usize {
        fn go(g: &Graph, rest: u64) -> usize {
            if rest == 0 {
                return 0;
            }
            let mut best = 0;
            let mut s = rest;
            while s != 0 {
                let ok_indep = (0..g.vertex_count())
                    .filter(|v| s >> v & 1 == 1)
                    .all(|v| (0..g.vertex_count()).all(|w| s >> w & 1 == 0 || !g.adjacent(v, w)));
                let ok_max = (0..g.vertex_count())
                    .filter(|w| rest >> w & 1 == 1 && s >> w & 1 == 0)
                    .all(|w| (0..g.vertex_count()).any(|v| s >> v & 1 == 1 && g.adjacent(v, w)));
                if ok_indep && ok_max {
                    best = best.max(1 + go(g, rest & !s));
                }
                s = (s - 1) & rest;
            }
            best
        }
        go(g, g.vertices().bits())
    }

    #[test]
    fn is_covering_examples() {
        let g = p3();
        assert!(is_covering(&g, &[set(&[0, 2]), set(&[1])]).unwrap());
        assert!(!is_covering(&g, &[set(&[0]), set(&[1]), set(&[2])]).unwrap());
        let k3 = Graph::complete(3);
        assert!(is_covering(&k3, &[set(&[0]), set(&[1]), set(&[2])]).unwrap());
        assert!(is_covering(&Graph::edgeless(0), &[]).unwrap());
        assert!(!is_covering(&Graph::edgeless(0), &[VertexSet::EMPTY]).unwrap());
        assert!(is_covering(&g, &[set(&[7])]).is_err());
    }

    #[test]
    fn chi_dot_examples() {
        for m in 1..=6 {
            let r = chi_dot(&Graph::complete(m)).unwrap();
            assert_eq!(r.value, m);
            assert!(r.witness.sets().iter().all(|s| s.len() == 1));
        }
        let r = chi_dot(&Graph::edgeless(4)).unwrap();
        assert_eq!((r.value, r.witness.sets()), (1, &[set(&[0, 1, 2, 3])][..]));
        let r = chi_dot(&p3()).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.witness.display(&p3()).to_string(), "[a c][b]");
        assert_eq!(chi_dot(&Graph::cycle(5)).unwrap().value, 3);
        assert_eq!(chi_dot(&Graph::edgeless(0)).unwrap().value, 0);
        assert!(chi_dot(&Graph::edgeless(17)).is_err());
    }

    #[test]
    fn chi_dot_matches_brute_force() {
        for n in 0..=5 {
            for g in all_graphs(n) {
                let r = chi_dot(&g).unwrap();
                assert_eq!(r.value, brute_force_max_covering(&g), "{g:?}");
                assert!(is_covering(&g, r.witness.sets()).unwrap());
            }
        }
    }

    #[test]
    fn c5_brute_force_value() {
        assert_eq!(brute_force_max_covering(&Graph::cycle(5)), 3);
        assert_eq!(brute_force_max_covering(&Graph::path(3)), 2);
    }

    #[test]
    fn partition_to_covering_examples() {
        let g = p3();
        let c = partition_to_covering(&g, &[set(&[0, 2]), set(&[1])]).unwrap();
        assert_eq!(c.sets(), [set(&[0, 2]), set(&[1])]);
        let c = partition_to_covering(&g, &[set(&[0]), set(&[1]), set(&[2])]).unwrap();
        assert_eq!(c.sets(), [set(&[0, 2]), set(&[1])]);
        let c4 = Graph::cycle(4);
        let c = partition_to_covering(&c4, &[set(&[0, 2]), set(&[1, 3])]).unwrap();
        assert_eq!(c.sets(), [set(&[0, 2]), set(&[1, 3])]);
    }

    #[test]
    fn partition_to_covering_rejects_bad_input() {
        let g = p3();
        assert!(matches!(
            partition_to_covering(&g, &[set(&[0, 1]), set(&[2])]),
            Err(Error::NotIndependent(_))
        ));
        assert!(matches!(
            partition_to_covering(&g, &[set(&[0, 2]), set(&[2, 1])]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(partition_to_covering(&g, &[set(&[0, 2])]), Err(Error::InvalidPartition(_))));
    }

    #[test]
    fn optimal_coloring_keeps_all_classes() {
        // brute-force an optimal coloring, then convert
        for n in 1..=6 {
            for g in all_graphs(n) {
                let k = g.chromatic_number();
                let coloring = (0..k.pow(n as u32))
                    .map(|code| (0..n).map(|i| code / k.pow(i as u32) % k).collect::<Vec<_>>())
                    .find(|c| g.edges().all(|(u, v)| c[u] != c[v]))
                    .unwrap();
                let parts: Vec<VertexSet> =
                    (0..k).map(|c| (0..n).filter(|&v| coloring[v] == c).collect()).collect();
                let cov = partition_to_covering(&g, &parts).unwrap();
                assert_eq!(cov.len(), k, "{g:?}");
            }
        }
    }

    #[test]
    fn lemma2_examples() {
        let g = p3();
        let c = lemma2_extend(&g, 1, &[set(&[0, 2])]).unwrap();
        assert_eq!(c.sets(), [set(&[1]), set(&[0, 2])]);
        let c = lemma2_extend(&g, 2, &[set(&[0]), set(&[1])]).unwrap();
        assert_eq!(c.sets(), [set(&[0, 2]), set(&[1])]);
        let k2 = Graph::complete(2);
        let c = lemma2_extend(&k2, 1, &[set(&[0])]).unwrap();
        assert_eq!(c.sets(), [set(&[1]), set(&[0])]);
        assert!(matches!(lemma2_extend(&g, 1, &[set(&[0])]), Err(Error::InvalidCovering(_))));
        assert!(lemma2_extend(&g, 5, &[]).is_err());

        // v = 0 sees 1 but not 2; {0} cannot lead
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let c = lemma2_extend(&g, 0, &[set(&[1, 2])]).unwrap();
        assert_eq!(c.sets(), [set(&[1, 2]), set(&[0])]);
        assert!(!is_covering(&g, &[set(&[0]), set(&[1, 2])]).unwrap());
    }

    #[test]
    fn lemma3_examples() {
        let k2 = Graph::complete(2);
        assert_eq!(lemma3_prepend(&k2, set(&[0]), &[set(&[1])]).unwrap().sets(), [set(&[0]), set(&[1])]);
        let c5 = Graph::cycle(5);
        let c = lemma3_prepend(&c5, set(&[0, 2]), &[set(&[1, 3]), set(&[4])]).unwrap();
        assert_eq!(c.sets(), [set(&[0, 2]), set(&[1, 3]), set(&[4])]);
        let g = p3();
        let c = lemma3_prepend(&g, set(&[1]), &[set(&[0, 2])]).unwrap();
        assert_eq!(c.sets(), [set(&[1]), set(&[0, 2])]);
        assert!(matches!(
            lemma3_prepend(&g, set(&[0]), &[set(&[1]), set(&[2])]),
            Err(Error::NotMaximalIndependent(_))
        ));
    }

    #[test]
    fn lemma2_and_3_preserve_coverings_exhaustively() {
        for n in 1..=5 {
            for g in all_graphs(n) {
                for v in 0..n {
                    let rest = g.vertices().without(v);
                    let sub = g.induced_subgraph(rest).unwrap();
                    let local = chi_dot(&sub).unwrap();
                    let lift: Vec<usize> = rest.to_vec();
                    let cov: Vec<VertexSet> = local
                        .witness
                        .sets()
                        .iter()
                        .map(|s| s.iter().map(|i| lift[i]).collect())
                        .collect();
                    let ext = lemma2_extend(&g, v, &cov).unwrap();
                    assert!(is_covering(&g, ext.sets()).unwrap());
                    assert!(ext.len() >= cov.len());
                }
                for i in g.maximal_independent_sets() {
                    let rest = g.vertices().difference(i);
                    let local = chi_dot(&g.induced_subgraph(rest).unwrap()).unwrap();
                    let lift = rest.to_vec();
                    let cov: Vec<VertexSet> = local
                        .witness
                        .sets()
                        .iter()
                        .map(|s| s.iter().map(|j| lift[j]).collect())
                        .collect();
                    let ext = lemma3_prepend(&g, i, &cov).unwrap();
                    assert_eq!(ext.len(), cov.len() + 1);
                    assert!(is_covering(&g, ext.sets()).unwrap());
                }
            }
        }
    }
}
