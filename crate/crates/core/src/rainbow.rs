//! Edge-colored complete graphs, rainbow tiling search, and representative
//! graphs.

use crate::graph::Graph;
use crate::graph::VertexSet;
use crate::search::{Budget, SearchOutcome};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("coloring must assign every pair: expected {expected} entries, got {got}")]
    NotTotal { expected: usize, got: usize },
    #[error("color {0} outside the range [1, {1}]")]
    ColorOutOfRange(u32, u32),
    #[error("color {0} unused: coloring must be surjective onto [1, num_colors]")]
    NotSurjective(u32),
    #[error("s={s} outside [1, n/3] for n={n}")]
    SOutOfRange { s: usize, n: usize },
    #[error("malformed coloring: {0}")]
    Malformed(String),
}

/// A total, surjective edge coloring of K_n with colors `1..=num_colors`.
///
/// Colors are stored against the canonical pair order: (0,1), (0,2), ...,
/// (0,n-1), (1,2), ...
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    n: usize,
    colors: Vec<u32>,
    num_colors: u32,
}

#[inline]
fn pair_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

impl EdgeColoring {
    /// Builds from colors listed in canonical pair order; validates totality
    /// and surjectivity.
    pub fn from_canonical_colors(
        n: usize,
        colors: Vec<u32>,
        num_colors: u32,
    ) -> Result<Self, ColoringError> {
        let expected = n * (n - 1) / 2;
        if colors.len() != expected {
            return Err(ColoringError::NotTotal { expected, got: colors.len() });
        }
        let mut used = vec![false; num_colors as usize];
        for &c in &colors {
            if c == 0 || c > num_colors {
                return Err(ColoringError::ColorOutOfRange(c, num_colors));
            }
            used[(c - 1) as usize] = true;
        }
        if let Some(miss) = used.iter().position(|&u| !u) {
            return Err(ColoringError::NotSurjective(miss as u32 + 1));
        }
        Ok(EdgeColoring { n, colors, num_colors })
    }

    /// All edges distinct colors.
    pub fn rainbow(n: usize) -> Self {
        let m = n * (n - 1) / 2;
        EdgeColoring {
            n,
            colors: (1..=m as u32).collect(),
            num_colors: m as u32,
        }
    }

    /// Every edge the same color.
    pub fn monochromatic(n: usize) -> Self {
        let m = n * (n - 1) / 2;
        EdgeColoring { n, colors: vec![1; m], num_colors: 1 }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> u32 {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.colors[pair_index(self.n, a, b)]
    }

    /// Class sizes indexed by color-1.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.num_colors as usize];
        for &c in &self.colors {
            sizes[(c - 1) as usize] += 1;
        }
        sizes
    }

    /// Merges color class `b` into class `a` and renumbers to keep the
    /// range contiguous. Used by the merge-monotonicity property test.
    pub fn merge_classes(&self, a: u32, b: u32) -> EdgeColoring {
        assert!(a != b && a >= 1 && b >= 1 && a <= self.num_colors && b <= self.num_colors);
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                let c = if c == b { a } else { c };
                if c > b {
                    c - 1
                } else {
                    c
                }
            })
            .collect();
        EdgeColoring { n: self.n, colors, num_colors: self.num_colors - 1 }
    }
}

/// JSON form: `{n, num_colors, edges: [[u, v, color], ...]}` with every
/// unordered pair present exactly once.
#[derive(Serialize, Deserialize)]
struct ColoringRepr {
    n: usize,
    num_colors: u32,
    edges: Vec<(u16, u16, u32)>,
}

impl Serialize for EdgeColoring {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut edges = Vec::with_capacity(self.colors.len());
        for u in 0..self.n {
            for v in u + 1..self.n {
                edges.push((u as u16, v as u16, self.color(u, v)));
            }
        }
        ColoringRepr { n: self.n, num_colors: self.num_colors, edges }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for EdgeColoring {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = ColoringRepr::deserialize(de)?;
        let expected = repr.n * repr.n.saturating_sub(1) / 2;
        let mut colors = vec![0u32; expected];
        for &(u, v, c) in &repr.edges {
            let (u, v) = (u as usize, v as usize);
            if u >= repr.n || v >= repr.n || u == v {
                return Err(D::Error::custom(ColoringError::Malformed(format!(
                    "bad pair ({u},{v})"
                ))));
            }
            let idx = pair_index(repr.n, u.min(v), u.max(v));
            if colors[idx] != 0 {
                return Err(D::Error::custom(ColoringError::Malformed(format!(
                    "pair ({u},{v}) listed twice"
                ))));
            }
            colors[idx] = c;
        }
        if colors.contains(&0) {
            return Err(D::Error::custom(ColoringError::Malformed(
                "some pair is missing a color".into(),
            )));
        }
        EdgeColoring::from_canonical_colors(repr.n, colors, repr.num_colors)
            .map_err(D::Error::custom)
    }
}

/// A rainbow set of s vertex-disjoint triangles with its 3s distinct colors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowTiling {
    pub triangles: Vec<[u16; 3]>,
    pub colors: Vec<u32>,
}

struct ColorMask {
    words: Vec<u64>,
}

impl ColorMask {
    fn new(num_colors: u32) -> Self {
        ColorMask { words: vec![0; (num_colors as usize).div_ceil(64)] }
    }
    #[inline]
    fn set(&mut self, c: u32) {
        self.words[(c - 1) as usize >> 6] |= 1 << ((c - 1) & 63);
    }
    #[inline]
    fn clear(&mut self, c: u32) {
        self.words[(c - 1) as usize >> 6] &= !(1 << ((c - 1) & 63));
    }
    #[inline]
    fn contains(&self, c: u32) -> bool {
        self.words[(c - 1) as usize >> 6] >> ((c - 1) & 63) & 1 == 1
    }
}

/// Exhaustive backtracking search for a rainbow copy of s vertex-disjoint
/// triangles. Candidate triangles are the rainbow triples of K_n in
/// canonical order; the used-color set prunes as it grows.
pub fn find_rainbow_tiling(
    c: &EdgeColoring,
    s: usize,
    budget_limit: u64,
) -> Result<SearchOutcome<Option<RainbowTiling>>, ColoringError> {
    let n = c.n();
    if s == 0 || 3 * s > n {
        return Err(ColoringError::SOutOfRange { s, n });
    }
    if (c.num_colors as usize) < 3 * s {
        // Too few colors for 3s distinct ones.
        return Ok(SearchOutcome::Complete(None));
    }
    // Rainbow triangles only: three pairwise distinct edge colors.
    let mut cands: Vec<([u16; 3], [u32; 3])> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let cab = c.color(a, b);
            for d in b + 1..n {
                let (cad, cbd) = (c.color(a, d), c.color(b, d));
                if cab != cad && cab != cbd && cad != cbd {
                    cands.push(([a as u16, b as u16, d as u16], [cab, cad, cbd]));
                }
            }
        }
    }
    let mut budget = Budget::new(budget_limit);
    let mut used_colors = ColorMask::new(c.num_colors);
    let mut used_verts = VertexSet::EMPTY;
    let mut stack: Vec<usize> = Vec::with_capacity(s);
    let found = rec_rainbow(
        &cands,
        0,
        s,
        &mut stack,
        &mut used_verts,
        &mut used_colors,
        &mut budget,
    );
    match found {
        None => Ok(SearchOutcome::Indeterminate { nodes_used: budget.used() }),
        Some(true) => {
            let triangles: Vec<[u16; 3]> = stack.iter().map(|&i| cands[i].0).collect();
            let colors: Vec<u32> = stack.iter().flat_map(|&i| cands[i].1).collect();
            Ok(SearchOutcome::Complete(Some(RainbowTiling { triangles, colors })))
        }
        Some(false) => Ok(SearchOutcome::Complete(None)),
    }
}

/// Some(found) on completed search, None on budget exhaustion.
fn rec_rainbow(
    cands: &[([u16; 3], [u32; 3])],
    from: usize,
    s: usize,
    stack: &mut Vec<usize>,
    used_verts: &mut VertexSet,
    used_colors: &mut ColorMask,
    budget: &mut Budget,
) -> Option<bool> {
    if stack.len() == s {
        return Some(true);
    }
    if !budget.tick() {
        return None;
    }
    let need = s - stack.len();
    for i in from..cands.len() {
        if cands.len() - i < need {
            break;
        }
        let (tri, cols) = &cands[i];
        if tri.iter().any(|&v| used_verts.contains(v as usize)) {
            continue;
        }
        if cols.iter().any(|&c| used_colors.contains(c)) {
            continue;
        }
        for &v in tri {
            used_verts.insert(v as usize);
        }
        for &c in cols {
            used_colors.set(c);
        }
        stack.push(i);
        let sub = rec_rainbow(cands, i + 1, s, stack, used_verts, used_colors, budget);
        if sub != Some(false) {
            return sub; // found or exhausted
        }
        stack.pop();
        for &v in tri {
            used_verts.remove(v as usize);
        }
        for &c in cols {
            used_colors.clear(c);
        }
    }
    Some(false)
}

/// One canonically-smallest edge per color class: a rainbow spanning
/// subgraph with exactly `num_colors` edges.
pub fn representative_graph(c: &EdgeColoring) -> Graph {
    let mut chosen: Vec<Option<(usize, usize)>> = vec![None; c.num_colors() as usize];
    for u in 0..c.n() {
        for v in u + 1..c.n() {
            let k = (c.color(u, v) - 1) as usize;
            if chosen[k].is_none() {
                chosen[k] = Some((u, v));
            }
        }
    }
    Graph::from_edges(c.n(), chosen.into_iter().flatten())
        .expect("edges of K_n are within range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::DEFAULT_BUDGET;

    #[test]
    fn rainbow_k6_has_two_disjoint_triangles() {
        let c = EdgeColoring::rainbow(6);
        let w = find_rainbow_tiling(&c, 2, DEFAULT_BUDGET)
            .unwrap()
            .complete()
            .unwrap()
            .unwrap();
        assert_eq!(w.triangles.len(), 2);
        let mut cols = w.colors.clone();
        cols.sort_unstable();
        cols.dedup();
        assert_eq!(cols.len(), 6);
    }

    #[test]
    fn monochromatic_k9_has_no_rainbow_triangle() {
        let c = EdgeColoring::monochromatic(9);
        let out = find_rainbow_tiling(&c, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(out, SearchOutcome::Complete(None));
    }

    #[test]
    fn s_out_of_range_rejected() {
        let c = EdgeColoring::rainbow(6);
        assert!(find_rainbow_tiling(&c, 3, DEFAULT_BUDGET).is_err());
        assert!(find_rainbow_tiling(&c, 0, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn representative_of_rainbow_is_complete() {
        let c = EdgeColoring::rainbow(5);
        let h = representative_graph(&c);
        assert_eq!(h.edge_count(), 10);
    }

    #[test]
    fn representative_of_monochromatic_is_single_edge() {
        let c = EdgeColoring::monochromatic(5);
        let h = representative_graph(&c);
        assert_eq!(h.edge_count(), 1);
        assert!(h.has_edge(0, 1));
    }

    #[test]
    fn representative_is_rainbow_with_num_colors_edges() {
        let spec = crate::construct::ConstructionSpec::new(crate::construct::Family::E1, 9, 1);
        let c = crate::construct::build_lower_bound_coloring(&spec).unwrap();
        let h = representative_graph(&c);
        assert_eq!(h.edge_count(), c.num_colors() as usize);
        let mut seen = std::collections::BTreeSet::new();
        for (u, v) in h.edges() {
            assert!(seen.insert(c.color(u as usize, v as usize)));
        }
    }

    #[test]
    fn monotone_in_s() {
        // A witness for s implies one for smaller s (its prefix).
        let c = EdgeColoring::rainbow(9);
        for s in 1..=3 {
            assert!(find_rainbow_tiling(&c, s, DEFAULT_BUDGET)
                .unwrap()
                .complete()
                .unwrap()
                .is_some());
        }
    }

    #[test]
    fn merging_preserves_rainbow_freeness() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..40 {
            let n = 7;
            let m = n * (n - 1) / 2;
            let k = rng.random_range(3..=8u32);
            // Random surjective coloring: first k edges fix surjectivity.
            let mut colors: Vec<u32> = (1..=k).collect();
            while colors.len() < m {
                colors.push(rng.random_range(1..=k));
            }
            let c = EdgeColoring::from_canonical_colors(n, colors, k).unwrap();
            let free = find_rainbow_tiling(&c, 2, DEFAULT_BUDGET)
                .unwrap()
                .complete()
                .unwrap()
                .is_none();
            if free && k >= 4 {
                let a = rng.random_range(1..=k - 1);
                let b = rng.random_range(a + 1..=k);
                let merged = c.merge_classes(a, b);
                assert!(find_rainbow_tiling(&merged, 2, DEFAULT_BUDGET)
                    .unwrap()
                    .complete()
                    .unwrap()
                    .is_none());
            }
        }
    }

    #[test]
    fn coloring_json_round_trip() {
        let spec = crate::construct::ConstructionSpec::new(crate::construct::Family::E5, 12, 1);
        let c = crate::construct::build_lower_bound_coloring(&spec).unwrap();
        let js = serde_json::to_string(&c).unwrap();
        let back: EdgeColoring = serde_json::from_str(&js).unwrap();
        assert_eq!(back, c);
        // A coloring with a missing pair is rejected.
        let bad = r#"{"n":3,"num_colors":1,"edges":[[0,1,1],[0,2,1]]}"#;
        assert!(serde_json::from_str::<EdgeColoring>(bad).is_err());
    }
}
