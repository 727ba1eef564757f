//! Builders for the extremal graphs E1..E5 and G1..G4 and for the
//! rainbow-avoiding lower-bound colorings.
//!
//! Vertices are laid out part by part: X first, then Y1, Y2, Y3, Y4 in
//! order, each part an interval of consecutive ids.

use crate::graph::{Graph, VertexSet};
use crate::rainbow::EdgeColoring;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::Range;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("{family} requires {constraint} (n={n}, t={t})")]
    InvalidSpec { family: Family, n: u64, t: u64, constraint: String },
    #[error("lower-bound colorings are defined for the E-families only, got {0}")]
    NotAnEFamily(Family),
    #[error("unknown construction family {0:?}")]
    UnknownFamily(String),
    #[error("graph build failed: {0}")]
    Graph(#[from] crate::graph::GraphError),
}

/// The nine construction families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    E1,
    E2,
    E3,
    E4,
    E5,
    G1,
    G2,
    G3,
    G4,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::E1,
        Family::E2,
        Family::E3,
        Family::E4,
        Family::E5,
        Family::G1,
        Family::G2,
        Family::G3,
        Family::G4,
    ];

    pub fn is_e_family(&self) -> bool {
        matches!(self, Family::E1 | Family::E2 | Family::E3 | Family::E4 | Family::E5)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Family {
    type Err = ConstructionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "E1" => Ok(Family::E1),
            "E2" => Ok(Family::E2),
            "E3" => Ok(Family::E3),
            "E4" => Ok(Family::E4),
            "E5" => Ok(Family::E5),
            "G1" => Ok(Family::G1),
            "G2" => Ok(Family::G2),
            "G3" => Ok(Family::G3),
            "G4" => Ok(Family::G4),
            other => Err(ConstructionError::UnknownFamily(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PartLabel {
    X,
    Y1,
    Y2,
    Y3,
    Y4,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub family: Family,
    pub n: u64,
    pub t: u64,
    /// G4 only: size of Y1 (= size of Y3). Defaults to the balanced split
    /// ceil((n-3t-2)/2).
    pub gamma4_y1: Option<u64>,
    /// E3 only: shrink X from 2t+2 to 2t+1 for comparison runs.
    pub e3_shrunk_x: bool,
}

impl ConstructionSpec {
    pub fn new(family: Family, n: u64, t: u64) -> Self {
        ConstructionSpec { family, n, t, gamma4_y1: None, e3_shrunk_x: false }
    }
}

/// A built construction: the graph plus the named part map.
#[derive(Clone, Debug, Serialize)]
pub struct PartedGraph {
    pub graph: Graph,
    pub parts: Vec<(PartLabel, VertexSet)>,
}

impl PartedGraph {
    pub fn part(&self, label: PartLabel) -> Option<&VertexSet> {
        self.parts.iter().find(|(l, _)| *l == label).map(|(_, s)| s)
    }
}

struct Layout {
    parts: Vec<(PartLabel, Range<usize>)>,
}

impl Layout {
    fn new(sizes: &[(PartLabel, u64)]) -> Self {
        let mut parts = Vec::new();
        let mut at = 0usize;
        for &(label, size) in sizes {
            let size = size as usize;
            parts.push((label, at..at + size));
            at += size;
        }
        Layout { parts }
    }

    fn range(&self, label: PartLabel) -> Range<usize> {
        self.parts
            .iter()
            .find(|(l, _)| *l == label)
            .map(|(_, r)| r.clone())
            .unwrap_or(0..0)
    }
}

fn clique_edges(r: Range<usize>, edges: &mut Vec<(usize, usize)>) {
    for u in r.clone() {
        for v in u + 1..r.end {
            edges.push((u, v));
        }
    }
}

fn join_edges(a: &[Range<usize>], b: &[Range<usize>], edges: &mut Vec<(usize, usize)>) {
    for ra in a {
        for u in ra.clone() {
            for rb in b {
                for v in rb.clone() {
                    edges.push((u.min(v), u.max(v)));
                }
            }
        }
    }
}

/// Part sizes for a family, or the violated constraint.
fn part_sizes(spec: &ConstructionSpec) -> Result<Vec<(PartLabel, u64)>, ConstructionError> {
    let (n, t) = (spec.n, spec.t);
    let fail = |constraint: &str| ConstructionError::InvalidSpec {
        family: spec.family,
        n,
        t,
        constraint: constraint.to_string(),
    };
    if n < 3 {
        return Err(fail("n >= 3"));
    }
    if 3 * t > n {
        return Err(fail("n >= 3t"));
    }
    let ceil_half = |a: u64| a.div_ceil(2);
    let floor_half = |a: u64| a / 2;
    match spec.family {
        Family::E1 | Family::G1 => Ok(vec![
            (PartLabel::X, t),
            (PartLabel::Y1, floor_half(n - t)),
            (PartLabel::Y2, ceil_half(n - t)),
        ]),
        Family::E2 | Family::G2 => {
            let x = 2 * t + 1;
            if ceil_half(n) < x {
                return Err(fail("ceil(n/2) >= 2t+1"));
            }
            Ok(vec![
                (PartLabel::X, x),
                (PartLabel::Y1, floor_half(n)),
                (PartLabel::Y2, ceil_half(n) - x),
            ])
        }
        Family::E3 => {
            let x = if spec.e3_shrunk_x { 2 * t + 1 } else { 2 * t + 2 };
            if n < x {
                return Err(fail("n >= |X|"));
            }
            Ok(vec![(PartLabel::X, x), (PartLabel::Y1, n - x)])
        }
        Family::E4 => {
            if 6 * t + 6 < n {
                return Err(fail("6t - n + 6 >= 0"));
            }
            if n < 3 * t + 3 {
                return Err(fail("n - 3t - 3 >= 0"));
            }
            Ok(vec![
                (PartLabel::X, 6 * t + 6 - n),
                (PartLabel::Y1, n - 3 * t - 3),
                (PartLabel::Y2, n - 3 * t - 3),
            ])
        }
        Family::E5 => {
            if n < 3 * t + 5 {
                return Err(fail("n >= 3t + 5"));
            }
            Ok(vec![(PartLabel::X, 3 * t + 5), (PartLabel::Y1, n - 3 * t - 5)])
        }
        Family::G3 => {
            if n < 2 * t + 1 {
                return Err(fail("n - 2t - 1 >= 0"));
            }
            Ok(vec![(PartLabel::X, 2 * t + 1), (PartLabel::Y1, n - 2 * t - 1)])
        }
        Family::G4 => {
            if 6 * t + 4 < n {
                return Err(fail("6t - n + 4 >= 0"));
            }
            if n < 3 * t + 2 {
                return Err(fail("n - 3t - 2 >= 0"));
            }
            let s = n - 3 * t - 2;
            let a = spec.gamma4_y1.unwrap_or(ceil_half(s));
            if a > s {
                return Err(fail("|Y1| <= n - 3t - 2"));
            }
            Ok(vec![
                (PartLabel::X, 6 * t + 4 - n),
                (PartLabel::Y1, a),
                (PartLabel::Y2, s - a),
                (PartLabel::Y3, a),
                (PartLabel::Y4, s - a),
            ])
        }
    }
}

/// Exact closed-form edge count for a valid spec.
pub fn closed_form_edges(spec: &ConstructionSpec) -> Result<i64, ConstructionError> {
    part_sizes(spec)?;
    let (n, t) = (spec.n as i64, spec.t as i64);
    let c2 = |k: i64| if k < 2 { 0 } else { k * (k - 1) / 2 };
    let half_prod = |a: i64| ((a + 1) / 2) * (a / 2);
    Ok(match spec.family {
        Family::E1 | Family::G1 => c2(t) + t * (n - t) + half_prod(n - t),
        Family::E2 | Family::G2 => c2(2 * t + 1) + half_prod(n),
        Family::E3 => {
            if spec.e3_shrunk_x {
                c2(2 * t + 1) + (2 * t + 1) * (n - 2 * t - 1)
            } else {
                c2(2 * t + 2) + (2 * t + 2) * (n - 2 * t - 2)
            }
        }
        Family::E4 => c2(6 * t - n + 6) + (n - 3 * t - 3) * (3 * t + 3),
        // A path on k vertices has max(0, k-1) edges; the displayed
        // n-3t-6 only matches while Y is nonempty.
        Family::E5 => c2(3 * t + 5) + (n - 3 * t - 6).max(0),
        Family::G3 => c2(2 * t + 1) + (2 * t + 1) * (n - 2 * t - 1),
        Family::G4 => c2(6 * t - n + 4) + (3 * t + 2) * (n - 3 * t - 2),
    })
}

/// Builds the construction, or rejects the spec naming the violated
/// constraint.
pub fn build_construction(spec: &ConstructionSpec) -> Result<PartedGraph, ConstructionError> {
    let sizes = part_sizes(spec)?;
    let layout = Layout::new(&sizes);
    let x = layout.range(PartLabel::X);
    let y1 = layout.range(PartLabel::Y1);
    let y2 = layout.range(PartLabel::Y2);
    let y3 = layout.range(PartLabel::Y3);
    let y4 = layout.range(PartLabel::Y4);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    clique_edges(x.clone(), &mut edges);
    match spec.family {
        Family::E1 | Family::G1 => {
            join_edges(std::slice::from_ref(&x), &[y1.clone(), y2.clone()], &mut edges);
            join_edges(&[y1], &[y2], &mut edges);
        }
        Family::E2 | Family::G2 => {
            join_edges(&[x], std::slice::from_ref(&y1), &mut edges);
            join_edges(&[y1], &[y2], &mut edges);
        }
        Family::E3 | Family::G3 => {
            join_edges(&[x], &[y1], &mut edges);
        }
        Family::E4 => {
            join_edges(&[x], std::slice::from_ref(&y1), &mut edges);
            join_edges(&[y1], &[y2], &mut edges);
        }
        Family::E5 => {
            // Path on Y in index order: n-3t-6 edges over n-3t-5 vertices.
            for v in y1.clone() {
                if v + 1 < y1.end {
                    edges.push((v, v + 1));
                }
            }
        }
        Family::G4 => {
            join_edges(&[x], &[y1.clone(), y2.clone()], &mut edges);
            join_edges(&[y1, y4], &[y2, y3], &mut edges);
        }
    }
    let graph = Graph::from_edges(spec.n as usize, edges)?;
    let parts = layout
        .parts
        .iter()
        .map(|(label, r)| (*label, VertexSet::from_iter(r.clone())))
        .collect();
    Ok(PartedGraph { graph, parts })
}

/// Exact maximum triangle-tiling size of a built construction.
pub fn max_tiling_of_construction(
    spec: &ConstructionSpec,
    budget: u64,
) -> Result<crate::tiling::SearchOutcome<usize>, ConstructionError> {
    let built = build_construction(spec)?;
    Ok(crate::tiling::max_tiling_number(&built.graph, budget))
}

/// The rainbow-avoiding lower-bound coloring of K_n for an E-family spec.
///
/// For E1..E4 the construction is rainbow with colors `1..=e` and the whole
/// complement shares color `e+1` (when the complement is nonempty). For E5
/// the clique X is rainbow and vertex v_i outside it owns color `C(|X|,2)+i`
/// on all its edges toward X and toward later-indexed v_j.
pub fn build_lower_bound_coloring(
    spec: &ConstructionSpec,
) -> Result<EdgeColoring, ConstructionError> {
    if !spec.family.is_e_family() {
        return Err(ConstructionError::NotAnEFamily(spec.family));
    }
    let built = build_construction(spec)?;
    let n = spec.n as usize;
    let g = &built.graph;
    if spec.family == Family::E5 {
        let x_size = (3 * spec.t + 5) as usize;
        let base = (x_size * (x_size - 1) / 2) as u32;
        let mut next_clique = 0u32;
        let mut assign = Vec::with_capacity(n * (n - 1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                let c = if v < x_size {
                    next_clique += 1;
                    next_clique
                } else if u < x_size {
                    // x v_i with i = v - x_size + 1
                    base + (v - x_size + 1) as u32
                } else {
                    // v_i v_j gets the smaller index's color
                    base + (u - x_size + 1) as u32
                };
                assign.push(c);
            }
        }
        let num_colors = base + (n - x_size) as u32;
        return Ok(EdgeColoring::from_canonical_colors(n, assign, num_colors)
            .expect("scheme is total and surjective"));
    }
    let e = g.edge_count() as u32;
    let complement_empty = (n * (n - 1) / 2) as u32 == e;
    let num_colors = if complement_empty { e } else { e + 1 };
    let mut next = 0u32;
    let mut assign = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            let c = if g.has_edge(u, v) {
                next += 1;
                next
            } else {
                e + 1
            };
            assign.push(c);
        }
    }
    Ok(EdgeColoring::from_canonical_colors(n, assign, num_colors)
        .expect("rainbow-plus-one scheme is total and surjective"))
}

/// Outcome of the rainbow-freeness check for a lower-bound coloring.
#[derive(Clone, Debug, Serialize)]
pub struct LowerBoundVerdict {
    pub family: Family,
    pub n: u64,
    pub t: u64,
    pub num_colors: u32,
    /// True iff no rainbow (t+2)K3 exists (exhaustive within budget).
    pub rainbow_free: bool,
    pub witness: Option<crate::rainbow::RainbowTiling>,
}

/// Runs the exhaustive rainbow-(t+2)K3 search against the family's
/// lower-bound coloring. Budget exhaustion surfaces as `Indeterminate`.
pub fn verify_lower_bound_coloring(
    spec: &ConstructionSpec,
    budget: u64,
) -> Result<crate::tiling::SearchOutcome<LowerBoundVerdict>, ConstructionError> {
    let coloring = build_lower_bound_coloring(spec)?;
    let s = (spec.t + 2) as usize;
    let outcome = crate::rainbow::find_rainbow_tiling(&coloring, s, budget)
        .expect("s is within range for a valid spec");
    Ok(outcome.map(|witness| LowerBoundVerdict {
        family: spec.family,
        n: spec.n,
        t: spec.t,
        num_colors: coloring.num_colors(),
        rainbow_free: witness.is_none(),
        witness,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(f: Family, n: u64, t: u64) -> ConstructionSpec {
        ConstructionSpec::new(f, n, t)
    }

    #[test]
    fn e1_9_1() {
        let built = build_construction(&spec(Family::E1, 9, 1)).unwrap();
        assert_eq!(built.graph.edge_count(), 24);
        assert_eq!(built.part(PartLabel::X).unwrap().len(), 1);
        assert_eq!(built.part(PartLabel::Y1).unwrap().len(), 4);
        assert_eq!(built.part(PartLabel::Y2).unwrap().len(), 4);
    }

    #[test]
    fn e5_20_3() {
        let built = build_construction(&spec(Family::E5, 20, 3)).unwrap();
        assert_eq!(built.graph.edge_count(), 96);
        // Y carries a path with 5 edges on 6 vertices.
        let y = built.part(PartLabel::Y1).unwrap();
        assert_eq!(y.len(), 6);
        assert_eq!(built.graph.edges_within(y), 5);
    }

    #[test]
    fn gamma2_6_1_is_k6_minus_triangle() {
        let built = build_construction(&spec(Family::G2, 6, 1)).unwrap();
        assert_eq!(built.graph.edge_count(), 12);
        // Complement is a single triangle.
        let comp = built.graph.complement();
        assert_eq!(comp.edge_count(), 3);
        assert_eq!(comp.triangles().len(), 1);
    }

    #[test]
    fn gamma4_split_independent_edge_count() {
        // Edge count must match the closed form for any admissible split.
        let n = 40;
        let t = 11; // 6t-n+4 = 30, s = n-3t-2 = 5
        let want = closed_form_edges(&spec(Family::G4, n, t)).unwrap();
        for a in 0..=5u64 {
            let mut sp = spec(Family::G4, n, t);
            sp.gamma4_y1 = Some(a);
            let built = build_construction(&sp).unwrap();
            assert_eq!(built.graph.edge_count() as i64, want, "split a={a}");
        }
    }

    #[test]
    fn invalid_specs_name_the_constraint() {
        let err = build_construction(&spec(Family::E4, 15, 1)).unwrap_err();
        assert!(matches!(err, ConstructionError::InvalidSpec { .. }));
        assert!(err.to_string().contains("6t - n + 6"));
        assert!(build_construction(&spec(Family::E5, 100, 33)).is_err());
        assert!(build_construction(&spec(Family::E1, 10, 4)).is_err()); // n < 3t
    }

    #[test]
    fn closed_forms_match_built_graphs_small_grid() {
        for n in 3..=40u64 {
            for t in 0..=n / 3 {
                for family in Family::ALL {
                    let sp = spec(family, n, t);
                    if let Ok(built) = build_construction(&sp) {
                        let want = closed_form_edges(&sp).unwrap();
                        assert_eq!(
                            built.graph.edge_count() as i64,
                            want,
                            "{family} n={n} t={t}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn regeneration_is_bit_exact() {
        let sp = spec(Family::E2, 17, 2);
        let a = build_construction(&sp).unwrap();
        let b = build_construction(&sp).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.parts, b.parts);
        // Parts are disjoint and cover V.
        let mut union = VertexSet::EMPTY;
        let mut total = 0;
        for (_, p) in &a.parts {
            assert!(union.is_disjoint(p));
            union = union.union(p);
            total += p.len();
        }
        assert_eq!(total, 17);
    }

    #[test]
    fn e3_shrunk_x_flag() {
        let mut sp = spec(Family::E3, 12, 1);
        sp.e3_shrunk_x = true;
        let built = build_construction(&sp).unwrap();
        // Shrunk X=3: C(3,2) + 3*9 = 30, one less vertex in the clique.
        assert_eq!(built.graph.edge_count(), 30);
        assert_eq!(closed_form_edges(&sp).unwrap(), 30);
    }

    #[test]
    fn coloring_color_counts() {
        let c = build_lower_bound_coloring(&spec(Family::E1, 9, 1)).unwrap();
        assert_eq!(c.num_colors(), 25);
        let c = build_lower_bound_coloring(&spec(Family::E5, 20, 3)).unwrap();
        assert_eq!(c.num_colors(), 97);
        let c = build_lower_bound_coloring(&spec(Family::E3, 12, 1)).unwrap();
        assert_eq!(c.num_colors(), 39);
    }

    #[test]
    fn e1_coloring_class_census() {
        let c = build_lower_bound_coloring(&spec(Family::E1, 9, 1)).unwrap();
        let mut sizes: Vec<usize> = c.class_sizes();
        sizes.sort_unstable();
        // 24 singleton classes plus the complement class of size 36-24=12.
        assert_eq!(sizes.pop(), Some(12));
        assert!(sizes.iter().all(|&s| s == 1));
    }

    #[test]
    fn e5_coloring_class_census() {
        let sp = spec(Family::E5, 20, 3);
        let c = build_lower_bound_coloring(&sp).unwrap();
        // Clique classes are singletons; class base+i covers 14 clique
        // edges x*v_i plus the v_i v_j edges with j > i.
        let sizes = c.class_sizes();
        let base = 91;
        for (idx, &s) in sizes.iter().enumerate() {
            let color = idx + 1;
            if color <= base {
                assert_eq!(s, 1, "clique color {color}");
            } else {
                let i = color - base; // 1..=6
                assert_eq!(s, 14 + (6 - i), "outside color {color}");
            }
        }
    }
}
