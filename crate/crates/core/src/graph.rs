//! Finite simple graphs on at most 64 vertices.
//!
//! Vertices are the indices `0..n` of a graph; the index order is the total
//! vertex order every other module relies on (enumeration orders, boundary
//! signs). Each vertex carries a distinct label used for input and output.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// A set of vertices of some graph, stored as a bitmask.
///
/// Sets order lexicographically by their ascending vertex lists, so
/// `{0,2} < {1}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Independence {
    NotIndependent,
    Independent,
    MaximalIndependent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Graph6,
}

impl Format {
    /// Edge-list if the first meaningful line is a vertex count, graph6 otherwise.
    pub fn detect(text: &str) -> Format {
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'));
        match first.and_then(|l| l.split_whitespace().next()) {
            Some(tok) if tok.parse::<usize>().is_ok() => Format::EdgeList,
            _ => Format::Graph6,
        }
    }
}

/// A finite simple graph with labelled, totally ordered vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self
            .edges()
            .map(|(u, v)| format!("{}-{}", self.labels[u], self.labels[v]))
            .collect();
        f.debug_struct("Graph")
            .field("labels", &self.labels)
            .field("edges", &edges)
            .finish()
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl Graph {
    /// Edgeless graph on `n` vertices labelled `0..n`.
    pub fn edgeless(n: usize) -> Graph {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
        Graph {
            labels: default_labels(n),
            adj: vec![0; n],
        }
    }

    pub fn with_labels<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Graph> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                got: labels.len(),
                max: MAX_VERTICES,
            });
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.chars().any(|c| c.is_whitespace() || c == ',') {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!("invalid vertex label {l:?}"),
                });
            }
            if labels[..i].contains(l) {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!("duplicate vertex label {l:?}"),
                });
            }
        }
        let n = labels.len();
        Ok(Graph {
            labels,
            adj: vec![0; n],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                got: n,
                max: MAX_VERTICES,
            });
        }
        let mut g = Graph::edgeless(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::edgeless(n);
        for u in 0..n {
            g.adj[u] = VertexSet::full(n).without(u).bits();
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle edges are valid")
    }

    /// Adds the edge `uv`; adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.vertex_count();
        for w in [u, v] {
            if w >= n {
                return Err(Error::UnknownVertex(w.to_string()));
            }
        }
        if u == v {
            return Err(Error::Precondition(format!("loop at vertex {}", self.labels[u])));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    /// Resolves a vertex token: an exact label match first, then a 0-based index.
    pub fn resolve(&self, token: &str) -> Result<usize> {
        if let Some(i) = self.labels.iter().position(|l| l == token) {
            return Ok(i);
        }
        match token.parse::<usize>() {
            Ok(i) if i < self.vertex_count() => Ok(i),
            _ => Err(Error::UnknownVertex(token.to_string())),
        }
    }

    /// Resolves a comma-separated list of vertex tokens. The empty string is the empty set.
    pub fn resolve_set(&self, list: &str) -> Result<VertexSet> {
        list.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| self.resolve(t))
            .collect()
    }

    pub fn check_set(&self, s: VertexSet) -> Result<()> {
        match s.difference(self.vertices()).first() {
            Some(v) => Err(Error::UnknownVertex(v.to_string())),
            None => Ok(()),
        }
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Maximum vertex degree; 0 for edgeless and empty graphs.
    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            VertexSet(self.adj[u])
                .difference(VertexSet::full(u + 1))
                .iter()
                .map(move |v| (u, v))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = VertexSet::singleton(0);
        let mut frontier = seen;
        while let Some(v) = frontier.first() {
            frontier.remove(v);
            let new = self.neighbors(v).difference(seen);
            seen = seen.union(new);
            frontier = frontier.union(new);
        }
        seen == self.vertices()
    }

    /// The subgraph induced on `keep`, renumbered `0..|keep|` in inherited order.
    pub fn induced_subgraph(&self, keep: VertexSet) -> Result<Graph> {
        self.check_set(keep)?;
        let old: Vec<usize> = keep.to_vec();
        let labels = old.iter().map(|&v| self.labels[v].clone()).collect();
        let adj = old
            .iter()
            .map(|&u| {
                old.iter()
                    .enumerate()
                    .filter(|&(_, &v)| self.adjacent(u, v))
                    .fold(0u64, |acc, (j, _)| acc | 1 << j)
            })
            .collect();
        Ok(Graph { labels, adj })
    }

    /// `g \ s`: the subgraph induced on the complement of `s`.
    pub fn remove(&self, s: VertexSet) -> Result<Graph> {
        self.check_set(s)?;
        self.induced_subgraph(self.vertices().difference(s))
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.neighbors(v).is_disjoint(s))
    }

    /// Whether `s` is maximal independent in the subgraph induced on `within`.
    pub fn is_maximal_independent_within(&self, within: VertexSet, s: VertexSet) -> bool {
        if !s.is_subset(within) || !self.is_independent(s) {
            return false;
        }
        let dominated = s.iter().fold(s, |acc, v| acc.union(self.neighbors(v)));
        within.is_subset(dominated)
    }

    pub fn independence_status(&self, s: VertexSet) -> Result<Independence> {
        self.check_set(s)?;
        Ok(if !self.is_independent(s) {
            Independence::NotIndependent
        } else if self.is_maximal_independent_within(self.vertices(), s) {
            Independence::MaximalIndependent
        } else {
            Independence::Independent
        })
    }

    /// All maximal independent sets, lexicographically ordered.
    pub fn maximal_independent_sets(&self) -> Vec<VertexSet> {
        self.maximal_independent_sets_within(self.vertices())
    }

    /// All maximal independent sets of the subgraph induced on `within`,
    /// lexicographically ordered. Returns `[∅]` when `within` is empty.
    pub fn maximal_independent_sets_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut out = Vec::new();
        self.bron_kerbosch(within, VertexSet::EMPTY, within, VertexSet::EMPTY, &mut out);
        out.sort_unstable();
        out
    }

    // Maximal cliques of the complement graph restricted to `within`, with pivoting.
    fn bron_kerbosch(
        &self,
        within: VertexSet,
        r: VertexSet,
        p: VertexSet,
        x: VertexSet,
        out: &mut Vec<VertexSet>,
    ) {
        if p.is_empty() && x.is_empty() {
            out.push(r);
            return;
        }
        let free = |v: usize| within.difference(self.neighbors(v)).without(v);
        let pivot = p
            .union(x)
            .iter()
            .max_by_key(|&u| p.intersection(free(u)).len())
            .expect("p or x is nonempty");
        let (mut p, mut x) = (p, x);
        for v in p.difference(free(pivot)) {
            let fv = free(v);
            self.bron_kerbosch(within, r.with(v), p.intersection(fv), x.intersection(fv), out);
            p.remove(v);
            x.insert(v);
        }
    }

    /// Exact chromatic number by backtracking; 0 for the empty graph.
    pub fn chromatic_number(&self) -> usize {
        let n = self.vertex_count();
        if n == 0 {
            return 0;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.degree(v)));
        let mut colors = vec![usize::MAX; n];
        (1..=n)
            .find(|&k| self.color_with(&order, 0, k, 0, &mut colors))
            .expect("n colors always suffice")
    }

    fn color_with(&self, order: &[usize], idx: usize, k: usize, used: usize, colors: &mut [usize]) -> bool {
        let Some(&v) = order.get(idx) else {
            return true;
        };
        // new colors are interchangeable, so only try the lowest unused one
        for c in 0..k.min(used + 1) {
            if self.neighbors(v).iter().all(|w| colors[w] != c) {
                colors[v] = c;
                if self.color_with(order, idx + 1, k, used.max(c + 1), colors) {
                    return true;
                }
                colors[v] = usize::MAX;
            }
        }
        false
    }

    /// Brackets-and-labels rendering, e.g. `[a c]`.
    pub fn format_set(&self, s: VertexSet) -> String {
        let names: Vec<&str> = s.iter().map(|v| self.label(v)).collect();
        format!("[{}]", names.join(" "))
    }

    pub fn has_default_labels(&self) -> bool {
        self.labels.iter().enumerate().all(|(i, l)| *l == i.to_string())
    }

    /// Relabels vertices `0..n`.
    pub fn with_default_labels(&self) -> Graph {
        Graph {
            labels: default_labels(self.vertex_count()),
            adj: self.adj.clone(),
        }
    }
}

/// Parses a single graph in the given format.
pub fn parse_graph(text: &str, format: Format) -> Result<Graph> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Graph6 => {
            let mut lines = text
                .lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty());
            let (line, first) = lines.next().ok_or(Error::Parse {
                line: 1,
                msg: "no graph6 line".into(),
            })?;
            if let Some((extra, _)) = lines.next() {
                return Err(Error::Parse {
                    line: extra,
                    msg: "expected a single graph".into(),
                });
            }
            parse_graph6(first).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::Parse { line, msg },
                e => e,
            })
        }
    }
}

// Header "n [label...]", then one edge "u v" per line; endpoints are labels or indices.
fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing vertex count".into(),
    })?;
    let mut toks = header.split_whitespace();
    let n: usize = toks
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse {
            line: hline,
            msg: format!("malformed header {header:?}"),
        })?;
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            got: n,
            max: MAX_VERTICES,
        });
    }
    let labels: Vec<&str> = toks.collect();
    let mut g = if labels.is_empty() {
        Graph::edgeless(n)
    } else if labels.len() == n {
        Graph::with_labels(labels.iter().copied()).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::Parse { line: hline, msg },
            e => e,
        })?
    } else {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header declares {n} vertices but lists {} labels", labels.len()),
        });
    };
    for (line, l) in lines {
        let err = |msg: String| Error::Parse { line, msg };
        let toks: Vec<&str> = l.split_whitespace().collect();
        let [a, b] = toks[..] else {
            return Err(err(format!("expected \"u v\", got {l:?}")));
        };
        let parse_idx = |t: &str| -> Result<usize> {
            if let Some(i) = labels.iter().position(|l| *l == t) {
                return Ok(i);
            }
            let i: usize = t.parse().map_err(|_| err(format!("bad vertex index {t:?}")))?;
            if i >= n {
                return Err(err(format!("vertex index {i} out of range 0..{n}")));
            }
            Ok(i)
        };
        let (u, v) = (parse_idx(a)?, parse_idx(b)?);
        if u == v {
            return Err(err(format!("loop at vertex {u}")));
        }
        g.add_edge(u, v)?;
    }
    Ok(g)
}

/// Parses one graph6 string (an optional `>>graph6<<` header is accepted).
pub fn parse_graph6(s: &str) -> Result<Graph> {
    let err = |msg: String| Error::Parse { line: 1, msg };
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes: Vec<u8> = s
        .bytes()
        .map(|b| {
            if (63..=126).contains(&b) {
                Ok(b - 63)
            } else {
                Err(err(format!("byte {b:#x} outside the graph6 range")))
            }
        })
        .collect::<Result<_>>()?;
    let (n, body) = match bytes.as_slice() {
        [] => return Err(err("empty graph6 string".into())),
        [63, 63, rest @ ..] if rest.len() >= 6 => {
            (rest[..6].iter().fold(0usize, |a, &b| a << 6 | b as usize), &rest[6..])
        }
        [63, rest @ ..] if rest.len() >= 3 => {
            (rest[..3].iter().fold(0usize, |a, &b| a << 6 | b as usize), &rest[3..])
        }
        [63, ..] => return Err(err("truncated graph6 size".into())),
        [b, rest @ ..] => (*b as usize, rest),
    };
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            got: n,
            max: MAX_VERTICES,
        });
    }
    let nbits = n * n.saturating_sub(1) / 2;
    if body.len() != nbits.div_ceil(6) {
        return Err(err(format!(
            "expected {} data bytes for {n} vertices, found {}",
            nbits.div_ceil(6),
            body.len()
        )));
    }
    let bit = |k: usize| body[k / 6] >> (5 - k % 6) & 1 == 1;
    let mut g = Graph::edgeless(n);
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                g.add_edge(u, v)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

impl Graph {
    /// Edge-list text: the vertex count (followed by labels unless they are
    /// the default `0..n`), then one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = self.vertex_count().to_string();
        if !self.has_default_labels() {
            for l in &self.labels {
                out.push(' ');
                out.push_str(l);
            }
        }
        out.push('\n');
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", self.labels[u], self.labels[v]));
        }
        out
    }

    pub fn to_graph6(&self) -> String {
        let n = self.vertex_count();
        let mut bytes: Vec<u8> = if n < 63 {
            vec![n as u8]
        } else {
            vec![63, (n >> 12 & 63) as u8, (n >> 6 & 63) as u8, (n & 63) as u8]
        };
        let mut acc = 0u8;
        let mut filled = 0;
        for v in 1..n {
            for u in 0..v {
                acc = acc << 1 | self.adjacent(u, v) as u8;
                filled += 1;
                if filled == 6 {
                    bytes.push(acc);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            bytes.push(acc << (6 - filled));
        }
        bytes.into_iter().map(|b| (b + 63) as char).collect()
    }

    pub fn serialize(&self, format: Format) -> String {
        match format {
            Format::EdgeList => self.to_edge_list(),
            Format::Graph6 => self.to_graph6(),
        }
    }
}

/// Every labelled graph on `n` vertices (`2^(n(n-1)/2)` of them), in edge-mask order.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).expect("valid pairs")
    })
}

/// Smallest graph6 string over all vertex permutations. Only meant for
/// small graphs (it tries all `n!` orders).
pub fn canonical_form(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<String> = None;
    loop {
        let mut h = Graph::edgeless(n);
        for (u, v) in g.edges() {
            h.add_edge(perm[u], perm[v]).expect("permuted edge");
        }
        let code = h.to_graph6();
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// One representative per isomorphism class of graphs on `n` vertices.
pub fn graphs_up_to_isomorphism(n: usize) -> Vec<Graph> {
    let mut seen = std::collections::BTreeMap::new();
    for g in all_graphs(n) {
        seen.entry(canonical_form(&g)).or_insert(g);
    }
    seen.into_values().collect()
}
