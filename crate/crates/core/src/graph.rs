//! Simple-graph core: fixed-capacity bitset adjacency plus the counting and
//! enumeration primitives every other module consumes.
//!
//! Graphs are immutable once built. Capacity is fixed at [`MAX_VERTICES`]
//! so a neighbor row is four machine words and set intersection stays
//! branch-free.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Hard cap on vertex count (four `u64` words per adjacency row).
pub const MAX_VERTICES: usize = 256;
const WORDS: usize = MAX_VERTICES / 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {v} out of range for graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0} rejected")]
    SelfLoop(usize),
    #[error("graph capacity is {MAX_VERTICES} vertices, got {0}")]
    TooManyVertices(usize),
    #[error("vertex sets must be disjoint")]
    OverlappingSets,
    #[error("malformed graph text: {0}")]
    BadText(String),
    #[error("malformed graph6 string: {0}")]
    BadGraph6(String),
}

/// A set of vertices from `[0, MAX_VERTICES)`, stored as a bitset.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet {
    words: [u64; WORDS],
}

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet { words: [0; WORDS] };

    /// The full set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        let mut s = Self::EMPTY;
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        let mut s = Self::EMPTY;
        for v in vs {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.words[v >> 6] |= 1u64 << (v & 63);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v >> 6] &= !(1u64 << (v & 63));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        (self.words[v >> 6] >> (v & 63)) & 1 == 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn union(&self, other: &Self) -> Self {
        let mut w = self.words;
        for k in 0..WORDS {
            w[k] |= other.words[k];
        }
        VertexSet { words: w }
    }

    #[inline]
    pub fn intersect(&self, other: &Self) -> Self {
        let mut w = self.words;
        for k in 0..WORDS {
            w[k] &= other.words[k];
        }
        VertexSet { words: w }
    }

    #[inline]
    pub fn minus(&self, other: &Self) -> Self {
        let mut w = self.words;
        for k in 0..WORDS {
            w[k] &= !other.words[k];
        }
        VertexSet { words: w }
    }

    #[inline]
    pub fn is_disjoint(&self, other: &Self) -> bool {
        (0..WORDS).all(|k| self.words[k] & other.words[k] == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        (0..WORDS).all(|k| self.words[k] & !other.words[k] == 0)
    }

    /// Lowest vertex in the set, if any.
    #[inline]
    pub fn first(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some((k << 6) + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Iterate vertices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some((k << 6) + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<u16> {
        self.iter().map(|v| v as u16).collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Undirected simple graph on `n <= MAX_VERTICES` vertices.
///
/// Adjacency is symmetric with no self-loops; the canonical order on edges
/// is lexicographic on `(min, max)` endpoints, and every enumeration in the
/// crate follows it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Graph with no edges.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
        })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for v in 0..n {
            let mut row = VertexSet::full(n);
            row.remove(v);
            g.adj[v] = row;
        }
        Ok(g)
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            g.add_edge_mut(u, v)?;
        }
        Ok(g)
    }

    fn add_edge_mut(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { v: w, n: self.n });
            }
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.len()).sum::<usize>() / 2
    }

    /// Edges in canonical `(u, v)` order with `u < v`.
    pub fn edges(&self) -> Vec<(u16, u16)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u as u16, v as u16));
                }
            }
        }
        out
    }

    /// Edge count of the induced subgraph on `s`.
    pub fn edges_within(&self, s: &VertexSet) -> usize {
        s.iter()
            .map(|u| self.adj[u].intersect(s).len())
            .sum::<usize>()
            / 2
    }

    /// Edges with one endpoint in `s` and the other in `t`; the sets must be
    /// disjoint.
    pub fn edges_between(&self, s: &VertexSet, t: &VertexSet) -> Result<usize, GraphError> {
        if !s.is_disjoint(t) {
            return Err(GraphError::OverlappingSets);
        }
        Ok(s.iter().map(|u| self.adj[u].intersect(t).len()).sum())
    }

    /// All triangles `{a, b, c}` with `a < b < c`, in canonical order.
    pub fn triangles(&self) -> Vec<[u16; 3]> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v <= u {
                    continue;
                }
                let common = self.adj[u].intersect(&self.adj[v]);
                for w in common.iter() {
                    if w > v {
                        out.push([u as u16, v as u16, w as u16]);
                    }
                }
            }
        }
        out
    }

    /// Some triangle lying entirely inside `s`, if one exists.
    pub fn triangle_in_subset(&self, s: &VertexSet) -> Option<[u16; 3]> {
        for u in s.iter() {
            let nu = self.adj[u].intersect(s);
            for v in nu.iter() {
                if v <= u {
                    continue;
                }
                let common = nu.intersect(&self.adj[v]);
                let w = common.iter().find(|&w| w > v);
                if let Some(w) = w {
                    return Some([u as u16, v as u16, w as u16]);
                }
            }
        }
        None
    }

    pub fn is_triangle_free(&self) -> bool {
        self.triangle_in_subset(&self.vertex_set()).is_none()
    }

    /// Induced subgraph on `s`, vertices relabeled `0..s.len()` in
    /// increasing original order.
    pub fn induced(&self, s: &VertexSet) -> Graph {
        let verts: Vec<usize> = s.iter().collect();
        let mut g = Graph::empty(verts.len()).expect("subset fits capacity");
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.adj[i].insert(j);
                    g.adj[j].insert(i);
                }
            }
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n).expect("same capacity");
        let full = VertexSet::full(self.n);
        for v in 0..self.n {
            let mut row = full.minus(&self.adj[v]);
            row.remove(v);
            g.adj[v] = row;
        }
        g
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Two-coloring restricted to `s`; returns the two color classes if the
    /// induced subgraph is bipartite. Components are rooted at their lowest
    /// vertex, which lands in the first class.
    pub fn bipartition_of_subset(&self, s: &VertexSet) -> Option<(VertexSet, VertexSet)> {
        let mut side_a = VertexSet::EMPTY;
        let mut side_b = VertexSet::EMPTY;
        let mut seen = VertexSet::EMPTY;
        let mut queue = Vec::new();
        for root in s.iter() {
            if seen.contains(root) {
                continue;
            }
            seen.insert(root);
            side_a.insert(root);
            queue.push(root);
            while let Some(u) = queue.pop() {
                let u_in_a = side_a.contains(u);
                for v in self.adj[u].intersect(s).iter() {
                    if !seen.contains(v) {
                        seen.insert(v);
                        if u_in_a {
                            side_b.insert(v);
                        } else {
                            side_a.insert(v);
                        }
                        queue.push(v);
                    } else if side_a.contains(v) == u_in_a {
                        return None;
                    }
                }
            }
        }
        Some((side_a, side_b))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition_of_subset(&self.vertex_set()).is_some()
    }

    // ---- text and graph6 serialization ----

    /// Text format: first line `n`, then one `u v` line per edge, 0-indexed,
    /// edges in canonical order.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, GraphError> {
        let mut tokens = text.split_whitespace();
        let n: usize = tokens
            .next()
            .ok_or_else(|| GraphError::BadText("empty input".into()))?
            .parse()
            .map_err(|e| GraphError::BadText(format!("bad vertex count: {e}")))?;
        let mut g = Graph::empty(n)?;
        loop {
            let Some(a) = tokens.next() else { break };
            let b = tokens
                .next()
                .ok_or_else(|| GraphError::BadText("odd number of endpoints".into()))?;
            let u: usize = a
                .parse()
                .map_err(|e| GraphError::BadText(format!("bad endpoint {a:?}: {e}")))?;
            let v: usize = b
                .parse()
                .map_err(|e| GraphError::BadText(format!("bad endpoint {b:?}: {e}")))?;
            g.add_edge_mut(u, v)?;
        }
        Ok(g)
    }

    /// Encode in the standard graph6 format (supports n up to capacity).
    pub fn to_graph6(&self) -> String {
        let mut out = Vec::new();
        if self.n <= 62 {
            out.push(self.n as u8 + 63);
        } else {
            // 4-byte form: '~' then 18 bits of n.
            out.push(b'~');
            let n = self.n as u32;
            out.push(((n >> 12) & 63) as u8 + 63);
            out.push(((n >> 6) & 63) as u8 + 63);
            out.push((n & 63) as u8 + 63);
        }
        // Upper triangle in column order: (0,1), (0,2), (1,2), (0,3), ...
        let mut bits: Vec<bool> = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for v in 1..self.n {
            for u in 0..v {
                bits.push(self.has_edge(u, v));
            }
        }
        for chunk in bits.chunks(6) {
            let mut b = 0u8;
            for (k, &bit) in chunk.iter().enumerate() {
                if bit {
                    b |= 1 << (5 - k);
                }
            }
            out.push(b + 63);
        }
        String::from_utf8(out).expect("graph6 bytes are ASCII")
    }

    pub fn from_graph6(s: &str) -> Result<Self, GraphError> {
        let bytes = s.trim().as_bytes();
        if bytes.is_empty() {
            return Err(GraphError::BadGraph6("empty string".into()));
        }
        let (n, mut pos) = if bytes[0] == b'~' {
            if bytes.len() < 4 {
                return Err(GraphError::BadGraph6("truncated vertex count".into()));
            }
            if bytes[1] == b'~' {
                return Err(GraphError::BadGraph6("8-byte counts unsupported".into()));
            }
            let mut n = 0usize;
            for &b in &bytes[1..4] {
                if !(63..=126).contains(&b) {
                    return Err(GraphError::BadGraph6("byte out of range".into()));
                }
                n = (n << 6) | (b - 63) as usize;
            }
            (n, 4)
        } else {
            if !(63..=126).contains(&bytes[0]) {
                return Err(GraphError::BadGraph6("byte out of range".into()));
            }
            ((bytes[0] - 63) as usize, 1)
        };
        let mut g = Graph::empty(n)?;
        let nbits = n * n.saturating_sub(1) / 2;
        let mut bit_idx = 0usize;
        let mut cur = 0u8;
        let mut cur_left = 0usize;
        let mut coords = (0usize, 1usize); // (u, v) walking the column order
        while bit_idx < nbits {
            if cur_left == 0 {
                if pos >= bytes.len() {
                    return Err(GraphError::BadGraph6("truncated bit vector".into()));
                }
                let b = bytes[pos];
                if !(63..=126).contains(&b) {
                    return Err(GraphError::BadGraph6("byte out of range".into()));
                }
                cur = b - 63;
                cur_left = 6;
                pos += 1;
            }
            let bit = (cur >> (cur_left - 1)) & 1 == 1;
            cur_left -= 1;
            if bit {
                g.add_edge_mut(coords.0, coords.1)?;
            }
            bit_idx += 1;
            coords.0 += 1;
            if coords.0 == coords.1 {
                coords = (0, coords.1 + 1);
            }
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count())
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.to_vec().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let vs = Vec::<u16>::deserialize(de)?;
        Ok(VertexSet::from_iter(vs.into_iter().map(|v| v as usize)))
    }
}

/// Serde adapter: graphs serialize as `{n, edges}`.
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(u16, u16)>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n,
            edges: self.edges(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(de)?;
        Graph::from_edges(repr.n, repr.edges.iter().map(|&(u, v)| (u as usize, v as usize)))
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
    }

    #[test]
    fn edge_count_basics() {
        assert_eq!(Graph::empty(5).unwrap().edge_count(), 0);
        assert_eq!(Graph::complete(6).unwrap().edge_count(), 15);
    }

    #[test]
    fn edges_between_k4_split() {
        let g = Graph::complete(4).unwrap();
        let s = VertexSet::from_iter([0, 1]);
        let t = VertexSet::from_iter([2, 3]);
        assert_eq!(g.edges_between(&s, &t).unwrap(), 4);
        assert_eq!(g.edges_between(&VertexSet::EMPTY, &t).unwrap(), 0);
        assert_eq!(
            g.edges_between(&s, &VertexSet::from_iter([1, 2])),
            Err(GraphError::OverlappingSets)
        );
    }

    #[test]
    fn edges_within_k5() {
        let g = Graph::complete(5).unwrap();
        assert_eq!(g.edges_within(&g.vertex_set()), 10);
        let bip = Graph::from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert_eq!(bip.edges_within(&VertexSet::from_iter([0, 1])), 0);
    }

    #[test]
    fn triangles_c5_and_k4() {
        assert!(cycle(5).triangles().is_empty());
        assert_eq!(Graph::complete(4).unwrap().triangles().len(), 4);
    }

    #[test]
    fn triangles_k6_minus_perfect_matching() {
        let mut g = Graph::complete(6).unwrap();
        let keep: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .map(|&(u, v)| (u as usize, v as usize))
            .filter(|&(u, v)| !matches!((u, v), (0, 1) | (2, 3) | (4, 5)))
            .collect();
        g = Graph::from_edges(6, keep).unwrap();
        // Brute-force oracle over all 20 triples.
        let mut count = 0;
        for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    if g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c) {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 8);
        assert_eq!(g.triangles().len(), 8);
    }

    #[test]
    fn complement_min_degree_bipartite() {
        assert_eq!(Graph::complete(7).unwrap().complement().edge_count(), 0);
        assert_eq!(cycle(5).min_degree(), 2);
        let k44 = Graph::from_edges(8, (0..4).flat_map(|u| (4..8).map(move |v| (u, v)))).unwrap();
        assert!(k44.is_bipartite());
        assert!(!cycle(5).is_bipartite());
        assert!(cycle(6).is_bipartite());
    }

    #[test]
    fn induced_subgraph_counts() {
        let g = Graph::complete(6).unwrap();
        let h = g.induced(&VertexSet::from_iter([1, 3, 5]));
        assert_eq!(h.n(), 3);
        assert_eq!(h.edge_count(), 3);
    }

    #[test]
    fn text_round_trip() {
        let g = cycle(7);
        let h = Graph::from_text(&g.to_text()).unwrap();
        assert_eq!(g, h);
        assert!(Graph::from_text("").is_err());
        assert!(Graph::from_text("3\n0").is_err());
        assert!(Graph::from_text("3\n0 3").is_err());
    }

    #[test]
    fn graph6_known_value() {
        // Reference value cross-checked against nauty/petgraph encoders.
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(g.to_graph6(), "DQc");
        assert_eq!(Graph::from_graph6("DQc").unwrap(), g);
    }

    #[test]
    fn graph6_large_n_round_trip() {
        let g = cycle(100);
        let s = g.to_graph6();
        assert!(s.starts_with('~'));
        assert_eq!(Graph::from_graph6(&s).unwrap(), g);
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (3..=max_n).prop_flat_map(|n| {
            let m = n * (n - 1) / 2;
            proptest::collection::vec(any::<bool>(), m).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for v in 1..n {
                    for u in 0..v {
                        if bits[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn complement_involution(g in arb_graph(16)) {
            prop_assert_eq!(g.complement().complement(), g);
        }

        #[test]
        fn partition_sum_identity(g in arb_graph(16)) {
            // Split vertices into 3 parts by residue; within + between = total.
            let n = g.n();
            let parts: Vec<VertexSet> = (0..3)
                .map(|r| VertexSet::from_iter((0..n).filter(|v| v % 3 == r)))
                .collect();
            let mut total = 0;
            for i in 0..3 {
                total += g.edges_within(&parts[i]);
                for j in i + 1..3 {
                    total += g.edges_between(&parts[i], &parts[j]).unwrap();
                }
            }
            prop_assert_eq!(total, g.edge_count());
        }

        #[test]
        fn triangle_enum_matches_naive(g in arb_graph(16)) {
            let mut naive = Vec::new();
            for a in 0..g.n() {
                for b in a + 1..g.n() {
                    for c in b + 1..g.n() {
                        if g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c) {
                            naive.push([a as u16, b as u16, c as u16]);
                        }
                    }
                }
            }
            prop_assert_eq!(g.triangles(), naive);
        }

        #[test]
        fn graph6_round_trip(g in arb_graph(16)) {
            prop_assert_eq!(Graph::from_graph6(&g.to_graph6()).unwrap(), g);
        }
    }
}
