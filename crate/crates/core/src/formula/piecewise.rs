//! Piecewise extremal formulas with exact interval-boundary handling.
//!
//! Several interval endpoints involve square roots. Membership of an
//! integer t is decided exactly by comparing squared integer quantities,
//! never by floating point, so closed-endpoint ties are detected reliably.

use super::{FormulaError, ProblemParams};
use crate::construct::{build_construction, ConstructionSpec, Family};
use serde::Serialize;
use std::cmp::Ordering;

#[inline]
fn binom2(k: i128) -> i128 {
    if k < 2 {
        0
    } else {
        k * (k - 1) / 2
    }
}

/// ceil(a/2) * floor(a/2)
#[inline]
fn half_product(a: i128) -> i128 {
    ((a + 1) / 2) * (a / 2)
}

/// e1(n,t) = C(t,2) + t(n-t) + ceil((n-t)/2) * floor((n-t)/2)
pub fn e1_formula(n: i128, t: i128) -> i128 {
    binom2(t) + t * (n - t) + half_product(n - t)
}

/// Interval endpoints appearing in the two piecewise formulas.
///
/// `Sqrt { a, b, c, d }` stands for `(a*n + b + c*sqrt(disc)) / d` where
/// `disc` is supplied by the discriminant closure, and `c` is +1 or -1.
#[derive(Clone, Copy, Debug)]
enum Boundary {
    Zero,
    /// (2n - 6) / 9
    TwoN6Over9,
    /// (n - 1) / 4
    NMinus1Over4,
    /// (n - sqrt(2n-3) - 3) / 4
    XiTwoThree,
    /// (5n + sqrt(3n^2-2n+4) - 20) / 22
    XiThreeFour,
    /// (2n - sqrt(16n-7) - 3) / 6
    XiFourFive,
    /// (5n - 12 + sqrt(3n^2-10n+12)) / 22
    ExThreeFour,
    /// n / 3
    NOver3,
}

/// Compares integer `t` against a boundary, exactly.
fn cmp_boundary(n: i128, t: i128, b: Boundary) -> Ordering {
    match b {
        Boundary::Zero => t.cmp(&0),
        Boundary::TwoN6Over9 => (9 * t).cmp(&(2 * n - 6)),
        Boundary::NMinus1Over4 => (4 * t).cmp(&(n - 1)),
        Boundary::NOver3 => (3 * t).cmp(&n),
        // t ? (n - 3 - sqrt(2n-3))/4  <=>  sqrt(2n-3) ? (n - 3 - 4t)
        Boundary::XiTwoThree => cmp_sub_sqrt(n - 3 - 4 * t, 2 * n - 3),
        // t ? (2n - 3 - sqrt(16n-7))/6  <=>  sqrt(16n-7) ? (2n - 3 - 6t)
        Boundary::XiFourFive => cmp_sub_sqrt(2 * n - 3 - 6 * t, 16 * n - 7),
        // t ? (5n - 20 + sqrt(3n^2-2n+4))/22  <=>  (22t - 5n + 20) ? sqrt(disc)
        Boundary::XiThreeFour => cmp_add_sqrt(22 * t - 5 * n + 20, 3 * n * n - 2 * n + 4),
        Boundary::ExThreeFour => cmp_add_sqrt(22 * t - 5 * n + 12, 3 * n * n - 10 * n + 12),
    }
}

/// Ordering of t against `(K - sqrt(disc)) / d`, given `r = K - d*t`:
/// t < boundary iff sqrt(disc) < r.
fn cmp_sub_sqrt(r: i128, disc: i128) -> Ordering {
    debug_assert!(disc >= 0);
    if r < 0 {
        return Ordering::Greater;
    }
    disc.cmp(&(r * r))
}

/// Ordering of t against `(K + sqrt(disc)) / d`, given `r = d*t - K`:
/// t > boundary iff r > sqrt(disc).
fn cmp_add_sqrt(r: i128, disc: i128) -> Ordering {
    debug_assert!(disc >= 0);
    if r < 0 {
        return Ordering::Less;
    }
    (r * r).cmp(&disc)
}

/// Result of a piecewise evaluation.
#[derive(Clone, Debug, Serialize)]
pub struct PiecewiseValue {
    pub value: i64,
    /// Branches (1-based) whose closed interval contains t and whose
    /// validity constraints hold; the value is their maximum.
    pub branches: Vec<u8>,
    /// True when t sits on a shared closed endpoint of two intervals.
    pub tie: bool,
    /// Branches containing t that were rejected by a validity constraint.
    pub rejected: Vec<(u8, String)>,
}

struct Branch {
    lo: Boundary,
    hi: Boundary,
    value: fn(i128, i128) -> i128,
    validity: fn(i128, i128) -> Option<String>,
}

fn xi_branches() -> [Branch; 5] {
    [
        Branch {
            lo: Boundary::Zero,
            hi: Boundary::TwoN6Over9,
            value: e1_formula,
            validity: |_, _| None,
        },
        Branch {
            lo: Boundary::TwoN6Over9,
            hi: Boundary::XiTwoThree,
            value: |n, t| binom2(2 * t + 1) + half_product(n),
            validity: |n, t| {
                ((n + 1) / 2 < 2 * t + 1).then(|| "ceil(n/2) >= 2t+1".to_string())
            },
        },
        Branch {
            lo: Boundary::XiTwoThree,
            hi: Boundary::XiThreeFour,
            value: |n, t| binom2(2 * t + 2) + (2 * t + 2) * (n - 2 * t - 2),
            validity: |n, t| (n - 2 * t - 2 < 0).then(|| "n - 2t - 2 >= 0".to_string()),
        },
        Branch {
            lo: Boundary::XiThreeFour,
            hi: Boundary::XiFourFive,
            value: |n, t| binom2(6 * t - n + 6) + (n - 3 * t - 3) * (3 * t + 3),
            validity: |n, t| {
                if 6 * t - n + 6 < 0 {
                    Some("6t - n + 6 >= 0".to_string())
                } else if n - 3 * t - 3 < 0 {
                    Some("n - 3t - 3 >= 0".to_string())
                } else {
                    None
                }
            },
        },
        Branch {
            lo: Boundary::XiFourFive,
            hi: Boundary::NOver3,
            value: |n, t| binom2(3 * t + 5) + (n - 3 * t - 6),
            validity: |n, t| (n - 3 * t - 5 < 0).then(|| "n - 3t - 5 >= 0".to_string()),
        },
    ]
}

fn ex_branches() -> [Branch; 4] {
    [
        Branch {
            lo: Boundary::Zero,
            hi: Boundary::TwoN6Over9,
            value: e1_formula,
            validity: |_, _| None,
        },
        Branch {
            lo: Boundary::TwoN6Over9,
            hi: Boundary::NMinus1Over4,
            value: |n, t| binom2(2 * t + 1) + half_product(n),
            validity: |n, t| {
                ((n + 1) / 2 < 2 * t + 1).then(|| "ceil(n/2) >= 2t+1".to_string())
            },
        },
        Branch {
            lo: Boundary::NMinus1Over4,
            hi: Boundary::ExThreeFour,
            value: |n, t| binom2(2 * t + 1) + (2 * t + 1) * (n - 2 * t - 1),
            validity: |n, t| (n - 2 * t - 1 < 0).then(|| "n - 2t - 1 >= 0".to_string()),
        },
        Branch {
            lo: Boundary::ExThreeFour,
            hi: Boundary::NOver3,
            value: |n, t| binom2(6 * t - n + 4) + (3 * t + 2) * (n - 3 * t - 2),
            validity: |n, t| {
                if 6 * t - n + 4 < 0 {
                    Some("6t - n + 4 >= 0".to_string())
                } else if n - 3 * t - 2 < 0 {
                    Some("n - 3t - 2 >= 0".to_string())
                } else {
                    None
                }
            },
        },
    ]
}

fn eval_piecewise(
    branches: &[Branch],
    p: &ProblemParams,
) -> Result<PiecewiseValue, FormulaError> {
    let (n, t) = (p.n as i128, p.t as i128);
    if t < 0 || 3 * t > n {
        return Err(FormulaError::TOutOfRange { n: p.n, t: p.t });
    }
    let mut hits: Vec<(u8, i128)> = Vec::new();
    let mut rejected = Vec::new();
    let mut containing = 0usize;
    for (k, b) in branches.iter().enumerate() {
        let above_lo = cmp_boundary(n, t, b.lo) != Ordering::Less;
        let below_hi = cmp_boundary(n, t, b.hi) != Ordering::Greater;
        if above_lo && below_hi {
            containing += 1;
            let branch_no = (k + 1) as u8;
            match (b.validity)(n, t) {
                Some(constraint) => rejected.push((branch_no, constraint)),
                None => hits.push((branch_no, (b.value)(n, t))),
            }
        }
    }
    if hits.is_empty() {
        let (branch, constraint) = rejected
            .first()
            .cloned()
            .unwrap_or((0, "no interval contains t".to_string()));
        return Err(FormulaError::InvalidBranch { branch, n: p.n, t: p.t, constraint });
    }
    let value = hits.iter().map(|&(_, v)| v).max().unwrap();
    Ok(PiecewiseValue {
        value: value as i64,
        branches: hits.iter().map(|&(b, _)| b).collect(),
        tie: containing > 1,
        rejected,
    })
}

/// The conjectured extremal edge count: max over the five constructions,
/// evaluated through the displayed five-branch formula.
pub fn xi_piecewise(p: &ProblemParams) -> Result<PiecewiseValue, FormulaError> {
    eval_piecewise(&xi_branches(), p)
}

/// The four-branch closed form of ex(n, (t+1)K3) for large n.
pub fn ex_abhp(p: &ProblemParams) -> Result<PiecewiseValue, FormulaError> {
    eval_piecewise(&ex_branches(), p)
}

impl ProblemParams {
    /// N := ex(n, (t+1)K3) + 2, the color count at which every surjective
    /// coloring of K_n is expected to contain a rainbow (t+2)K3.
    pub fn color_threshold(&self) -> Result<i64, FormulaError> {
        Ok(ex_abhp(self)?.value + 2)
    }
}

/// Per-family edge count of a built (not formula-evaluated) construction.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionMax {
    pub value: i64,
    pub best_family: Family,
    pub edge_counts: Vec<(Family, i64)>,
}

/// Max edge count over the valid constructions at (n, t), from built graphs.
pub fn xi_from_constructions(p: &ProblemParams) -> Result<ConstructionMax, FormulaError> {
    let mut counts = Vec::new();
    for family in [Family::E1, Family::E2, Family::E3, Family::E4, Family::E5] {
        let spec = ConstructionSpec::new(family, p.n, p.t);
        if let Ok(built) = build_construction(&spec) {
            counts.push((family, built.graph.edge_count() as i64));
        }
    }
    let &(best_family, value) = counts
        .iter()
        .max_by_key(|&&(_, v)| v)
        .ok_or(FormulaError::NoValidConstruction { n: p.n, t: p.t })?;
    Ok(ConstructionMax { value, best_family, edge_counts: counts })
}

#[derive(Clone, Debug, Serialize)]
pub struct ArFirstInterval {
    pub value: i64,
    /// Whether t satisfies the theorem hypothesis t <= (2n-6)/9 - 2.
    pub within_hypothesis: bool,
}

/// e1(n, t) + 2, the first-interval anti-Ramsey value.
///
/// Outside the proven range `t <= (2n-6)/9 - 2` the value is only returned
/// when `allow_outside` is set; the flag in the result records which side
/// of the hypothesis we are on either way.
pub fn ar_first_interval(
    p: &ProblemParams,
    allow_outside: bool,
) -> Result<ArFirstInterval, FormulaError> {
    let (n, t) = (p.n as i128, p.t as i128);
    if 3 * t > n {
        return Err(FormulaError::TOutOfRange { n: p.n, t: p.t });
    }
    let within_hypothesis = 9 * t <= 2 * n - 24;
    if !within_hypothesis && !allow_outside {
        return Err(FormulaError::OutsideHypothesis { n: p.n, t: p.t });
    }
    Ok(ArFirstInterval { value: (e1_formula(n, t) + 2) as i64, within_hypothesis })
}

/// Distance-from-boundary classification used by the agreement scan:
/// true when every interval endpoint is at distance >= 2 from t.
pub fn xi_interior_point(n: u64, t: u64) -> bool {
    let (n, t) = (n as i128, t as i128);
    let interior = [
        Boundary::TwoN6Over9,
        Boundary::XiTwoThree,
        Boundary::XiThreeFour,
        Boundary::XiFourFive,
    ];
    // |t - b| >= 2  <=>  t+2 <= b or t-2 >= b.
    let far = |b: Boundary| {
        cmp_boundary(n, t + 2, b) != Ordering::Greater || cmp_boundary(n, t - 2, b) != Ordering::Less
    };
    // Also stay >= 2 inside the outer endpoints 0 and n/3.
    t >= 2 && cmp_boundary(n, t + 2, Boundary::NOver3) != Ordering::Greater
        && interior.iter().all(|&b| far(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(n: u64, t: u64) -> ProblemParams {
        ProblemParams::new(n, t).unwrap()
    }

    #[test]
    fn xi_examples() {
        assert_eq!(xi_piecewise(&pp(100, 10)).unwrap().value, 2970);
        assert_eq!(xi_piecewise(&pp(9, 0)).unwrap().value, 20);
        assert_eq!(xi_piecewise(&pp(100, 31)).unwrap().value, 4754);
        // Branch 5 at t=33 fails the n >= 3t+5 validity constraint.
        assert!(matches!(
            xi_piecewise(&pp(100, 33)),
            Err(FormulaError::InvalidBranch { branch: 5, .. })
        ));
        assert!(xi_piecewise(&ProblemParams { n: 100, t: 40 }).is_err());
    }

    #[test]
    fn ex_examples() {
        assert_eq!(ex_abhp(&pp(100, 10)).unwrap().value, 2970);
        assert_eq!(ex_abhp(&pp(6, 1)).unwrap().value, 12);
        // t = n/3 makes branch 4's n-3t-2 negative.
        assert!(matches!(
            ex_abhp(&pp(9, 3)),
            Err(FormulaError::InvalidBranch { .. })
        ));
    }

    #[test]
    fn ar_first_interval_examples() {
        assert_eq!(ar_first_interval(&pp(100, 10), false).unwrap().value, 2972);
        assert_eq!(ar_first_interval(&pp(20, 1), false).unwrap().value, 111);
        assert_eq!(ar_first_interval(&pp(9, 0), true).unwrap().value, 22);
        // n=9, t=0: hypothesis needs 0 <= (18-6)/9 - 2 < 0, so it is outside.
        assert!(ar_first_interval(&pp(9, 0), false).is_err());
        assert!(!ar_first_interval(&pp(9, 0), true).unwrap().within_hypothesis);
    }

    #[test]
    fn boundary_tie_detected() {
        // n=12: (2n-6)/9 = 2 exactly; at this scale the later intervals
        // also fold back over t=2, so several branches contain it and the
        // result is their maximum with the tie flagged.
        let v = xi_piecewise(&pp(12, 2)).unwrap();
        assert!(v.tie);
        assert!(v.branches.contains(&1));
        assert!(v.branches.len() >= 2);
        // Max over contained branches: branch 5 (K11 plus an isolated
        // vertex) dominates here with C(11,2) + 0 = 55.
        assert_eq!(v.value, 55);
    }

    #[test]
    fn interval_order_restores_at_large_n() {
        // Below n ~ 167 branch 2's interval is empty (endpoints inverted);
        // from there on every interior boundary is ordered. At n=200 the
        // second interval is [43.78, 44.27], so t=44 sits inside it alone.
        let v = xi_piecewise(&pp(200, 44)).unwrap();
        assert_eq!(v.branches, vec![2]);
        assert!(!v.tie);
    }

    #[test]
    fn branch_agrees_with_construction_on_shared_points() {
        for (n, t) in [(60u64, 5u64), (100, 10), (150, 20), (200, 30)] {
            let xi = xi_piecewise(&pp(n, t)).unwrap();
            let cons = xi_from_constructions(&pp(n, t)).unwrap();
            assert_eq!(xi.value, cons.value, "mismatch at ({n},{t})");
        }
    }

    /// Each branch value function equals the corresponding built
    /// construction's edge count pointwise, wherever the family is valid —
    /// independent of which interval contains t.
    #[test]
    fn branch_values_are_construction_edge_counts() {
        use crate::construct::{build_construction, ConstructionSpec, Family};
        let branches = xi_branches();
        let families = [Family::E1, Family::E2, Family::E3, Family::E4, Family::E5];
        for n in (20..=120u64).step_by(7) {
            for t in 0..=n / 3 {
                for (k, family) in families.iter().enumerate() {
                    let spec = ConstructionSpec::new(*family, n, t);
                    let Ok(built) = build_construction(&spec) else { continue };
                    // Skip the one degenerate point where the displayed
                    // branch-5 term goes to -1 while the path vanishes.
                    if *family == Family::E5 && n == 3 * t + 5 {
                        continue;
                    }
                    assert_eq!(
                        (branches[k].value)(n as i128, t as i128),
                        built.graph.edge_count() as i128,
                        "{family} at ({n},{t})"
                    );
                }
            }
        }
    }

    #[test]
    fn ex_branch1_equals_xi_branch1_and_threshold() {
        for (n, t) in [(100u64, 10u64), (90, 7), (200, 40)] {
            let p = pp(n, t);
            assert_eq!(ex_abhp(&p).unwrap().value, xi_piecewise(&p).unwrap().value);
        }
        assert_eq!(pp(100, 10).color_threshold().unwrap(), 2972);
    }

    #[test]
    fn constructions_max_at_tight_t() {
        // At (9,3) only E1 and E3 are valid; E3 = K8 joined to one vertex
        // dominates with 36 edges.
        let v = xi_from_constructions(&pp(9, 3)).unwrap();
        assert_eq!(v.value, 36);
        assert_eq!(v.edge_counts.len(), 2);
    }

    #[test]
    fn interior_point_filter() {
        // n=12 has a boundary exactly at t=2; t in {0..4} are within distance 2.
        assert!(!xi_interior_point(12, 2));
        assert!(!xi_interior_point(12, 3));
        // Large n deep inside branch 1.
        assert!(xi_interior_point(100, 10));
    }
}
