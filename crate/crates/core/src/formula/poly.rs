//! The bound polynomials f, h, g, q1 and their exact shift identities.

use super::{FormulaError, PartitionStats, Rational};
use num_bigint::BigInt;
use serde::Serialize;

#[inline]
fn binom2(k: i128) -> i128 {
    k * (k - 1) / 2
}

/// The base polynomial f(tau1, tau2, tau3, tau4, mu, iota).
pub fn poly_f(s: &PartitionStats) -> i128 {
    let (t1, t2, t3, t4, m, i) = unpack(s);
    4 * m * t1
        + 2 * i * t1
        + 7 * binom2(t1)
        + 3 * t1
        + 2 * i * t2
        + 8 * binom2(t2)
        + 3 * t2
        + 8 * binom2(t3)
        + 8 * t3 * t4
        + 3 * t3
        + 7 * t1 * t2
        + (2 + 3 * m) * t2
        + 7 * t1 * (t3 + t4)
        + (3 + 3 * m) * t3
        + 8 * t2 * (t3 + t4)
        + (2 + i) * t3
}

/// h = f + iota*mu + mu^2 + (3mu+3)tau4 + (iota+2)tau4 + C(3*tau4, 2).
pub fn poly_h(s: &PartitionStats) -> i128 {
    let (_, _, _, t4, m, i) = unpack(s);
    poly_f(s) + i * m + m * m + (3 * m + 3) * t4 + (i + 2) * t4 + binom2(3 * t4)
}

/// g = f + iota*mu + mu^2 + (3mu+3)tau4 + (iota+2)tau4 + 8*C(tau4,2) + 10*tau4 - 28.
///
/// Negative values occur (the constant term); callers must not assume
/// non-negativity.
pub fn poly_g(s: &PartitionStats) -> i128 {
    let (_, _, _, t4, m, i) = unpack(s);
    poly_f(s) + i * m + m * m + (3 * m + 3) * t4 + (i + 2) * t4 + 8 * binom2(t4) + 10 * t4 - 28
}

/// q1 = h - mu - tau1.
pub fn poly_q1(s: &PartitionStats) -> i128 {
    poly_h(s) - s.mu as i128 - s.tau1 as i128
}

fn unpack(s: &PartitionStats) -> (i128, i128, i128, i128, i128, i128) {
    (
        s.tau1 as i128,
        s.tau2 as i128,
        s.tau3 as i128,
        s.tau4 as i128,
        s.mu as i128,
        s.iota as i128,
    )
}

/// Selector for the eight shift identities: six for h, two for g.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IdentityId {
    /// h(t1-x, t2+x, ., .) - h = x(x + 2t2 + 2t3 + 2t4 - 2mu + 3)/2
    H1,
    /// h(t1+x, ., t3-x, .) - h = x(x - 2t2 - 2t3 - 2t4 + 2mu + 2iota - 9)/2
    H2,
    /// h(., t2+x, t3-x, .) - h = (iota - 3)x
    H3,
    /// h(t1+x, ., ., t4-x) - h = x(x - t2 - t3 - 2t4 + mu + iota - 4)
    H4,
    /// h(., t2+x, ., t4-x) - h = x(x - 2t4 + 2iota - 5)/2
    H5,
    /// h(., ., t3-x, t4+x) - h = x(x + 2t4 - 1)/2
    H6,
    /// g(., t2+x, ., t4-x) - g = (iota - 10)x
    G1,
    /// g(., ., t3-x, t4+x) - g = 7x
    G2,
}

impl IdentityId {
    pub const ALL: [IdentityId; 8] = [
        IdentityId::H1,
        IdentityId::H2,
        IdentityId::H3,
        IdentityId::H4,
        IdentityId::H5,
        IdentityId::H6,
        IdentityId::G1,
        IdentityId::G2,
    ];

    /// 1-based index used by the CLI and reports.
    pub fn number(&self) -> u8 {
        IdentityId::ALL.iter().position(|i| i == self).unwrap() as u8 + 1
    }

    pub fn from_number(k: u8) -> Option<IdentityId> {
        IdentityId::ALL.get(k.checked_sub(1)? as usize).copied()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityVerdict {
    pub id: IdentityId,
    pub holds: bool,
    /// Shifted-minus-base polynomial value (exact).
    pub lhs: Rational,
    /// The displayed closed form (exact).
    pub rhs: Rational,
}

/// Evaluates one shift identity at `(s, x)` exactly.
///
/// Both sides are computed independently: the left side by evaluating the
/// polynomial at the shifted and base arguments, the right side from the
/// displayed closed form. Half-integer forms are decided by comparing the
/// doubled sides as integers. Errors when the shift drives an argument
/// negative.
pub fn check_identity(
    id: IdentityId,
    s: &PartitionStats,
    x: u64,
) -> Result<IdentityVerdict, FormulaError> {
    let (t2, t3, t4, m, i) = (
        s.tau2 as i128,
        s.tau3 as i128,
        s.tau4 as i128,
        s.mu as i128,
        s.iota as i128,
    );
    let xi = x as i128;
    // (shifted stats, polynomial, doubled right side)
    let (sh, poly, rhs2): (PartitionStats, fn(&PartitionStats) -> i128, i128) = match id {
        IdentityId::H1 => (
            shifted_pair(s, x, Field::Tau2, Field::Tau1)?,
            poly_h,
            xi * (xi + 2 * t2 + 2 * t3 + 2 * t4 - 2 * m + 3),
        ),
        IdentityId::H2 => (
            shifted_pair(s, x, Field::Tau1, Field::Tau3)?,
            poly_h,
            xi * (xi - 2 * t2 - 2 * t3 - 2 * t4 + 2 * m + 2 * i - 9),
        ),
        IdentityId::H3 => (
            shifted_pair(s, x, Field::Tau2, Field::Tau3)?,
            poly_h,
            2 * (i - 3) * xi,
        ),
        IdentityId::H4 => (
            shifted_pair(s, x, Field::Tau1, Field::Tau4)?,
            poly_h,
            2 * xi * (xi - t2 - t3 - 2 * t4 + m + i - 4),
        ),
        IdentityId::H5 => (
            shifted_pair(s, x, Field::Tau2, Field::Tau4)?,
            poly_h,
            xi * (xi - 2 * t4 + 2 * i - 5),
        ),
        IdentityId::H6 => (
            shifted_pair(s, x, Field::Tau4, Field::Tau3)?,
            poly_h,
            xi * (xi + 2 * t4 - 1),
        ),
        IdentityId::G1 => (
            shifted_pair(s, x, Field::Tau2, Field::Tau4)?,
            poly_g,
            2 * (i - 10) * xi,
        ),
        IdentityId::G2 => (
            shifted_pair(s, x, Field::Tau4, Field::Tau3)?,
            poly_g,
            14 * xi,
        ),
    };
    let lhs2 = 2 * (poly(&sh) - poly(s));
    let two = BigInt::from(2);
    Ok(IdentityVerdict {
        id,
        holds: lhs2 == rhs2,
        lhs: Rational::new(BigInt::from(lhs2), two.clone()),
        rhs: Rational::new(BigInt::from(rhs2), two),
    })
}

#[derive(Clone, Copy)]
enum Field {
    Tau1,
    Tau2,
    Tau3,
    Tau4,
}

fn shifted_pair(
    s: &PartitionStats,
    x: u64,
    plus: Field,
    minus: Field,
) -> Result<PartitionStats, FormulaError> {
    let mut out = *s;
    let get = |st: &PartitionStats, f: Field| match f {
        Field::Tau1 => st.tau1,
        Field::Tau2 => st.tau2,
        Field::Tau3 => st.tau3,
        Field::Tau4 => st.tau4,
    };
    let name = |f: Field| match f {
        Field::Tau1 => "tau1",
        Field::Tau2 => "tau2",
        Field::Tau3 => "tau3",
        Field::Tau4 => "tau4",
    };
    let set = |st: &mut PartitionStats, f: Field, v: u64| match f {
        Field::Tau1 => st.tau1 = v,
        Field::Tau2 => st.tau2 = v,
        Field::Tau3 => st.tau3 = v,
        Field::Tau4 => st.tau4 = v,
    };
    set(&mut out, plus, get(s, plus) + x);
    let dropped = get(s, minus)
        .checked_sub(x)
        .ok_or(FormulaError::NegativeShift { field: name(minus), value: get(s, minus), x })?;
    set(&mut out, minus, dropped);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn st(t1: u64, t2: u64, t3: u64, t4: u64, m: u64, i: u64) -> PartitionStats {
        PartitionStats::new(t1, t2, t3, t4, m, i)
    }

    #[test]
    fn poly_values_match_symbolic_oracle() {
        // Frozen from an independent symbolic evaluation of the displayed
        // polynomials (see the shift-identity tests for the cross-check).
        assert_eq!(poly_f(&st(0, 0, 0, 0, 0, 0)), 0);
        assert_eq!(poly_f(&st(1, 0, 0, 0, 1, 0)), 7);
        assert_eq!(poly_f(&st(0, 1, 0, 0, 0, 0)), 5);
        assert_eq!(poly_h(&st(0, 0, 0, 0, 0, 0)), 0);
        assert_eq!(poly_h(&st(0, 0, 0, 1, 0, 0)), 8);
        assert_eq!(poly_h(&st(1, 0, 0, 0, 2, 3)), 27);
        assert_eq!(poly_g(&st(0, 0, 0, 0, 0, 0)), -28);
        assert_eq!(poly_g(&st(0, 0, 0, 1, 0, 0)), -13);
        assert_eq!(poly_g(&st(0, 0, 0, 2, 0, 0)), 10);
    }

    #[test]
    fn q1_is_definitional() {
        for s in [st(0, 0, 0, 0, 0, 0), st(1, 0, 0, 0, 1, 0), st(2, 0, 0, 0, 3, 1)] {
            assert_eq!(poly_q1(&s), poly_h(&s) - s.mu as i128 - s.tau1 as i128);
        }
        assert_eq!(poly_q1(&st(0, 0, 0, 0, 0, 0)), 0);
    }

    #[test]
    fn identity_examples() {
        let v = check_identity(IdentityId::H3, &st(2, 1, 3, 0, 1, 4), 2).unwrap();
        assert!(v.holds);
        assert_eq!(v.lhs, Rational::from(num_bigint::BigInt::from(2)));
        let v = check_identity(IdentityId::G2, &st(0, 0, 5, 1, 2, 2), 3).unwrap();
        assert!(v.holds);
        assert_eq!(v.rhs, Rational::from(num_bigint::BigInt::from(21)));
        // Zero shift always holds with both sides zero.
        let v = check_identity(IdentityId::H1, &st(4, 2, 1, 0, 5, 3), 0).unwrap();
        assert!(v.holds);
        assert_eq!(v.lhs, Rational::from(num_bigint::BigInt::from(0)));
    }

    #[test]
    fn negative_shift_rejected() {
        let err = check_identity(IdentityId::H1, &st(1, 0, 0, 0, 0, 0), 2).unwrap_err();
        assert!(matches!(err, FormulaError::NegativeShift { field: "tau1", .. }));
    }

    proptest! {
        #[test]
        fn identities_hold_everywhere(
            t1 in 0u64..30, t2 in 0u64..30, t3 in 0u64..30, t4 in 0u64..30,
            m in 0u64..40, i in 0u64..40, x in 0u64..20,
        ) {
            let s = st(t1, t2, t3, t4, m, i);
            for id in IdentityId::ALL {
                if let Ok(v) = check_identity(id, &s, x) {
                    prop_assert!(v.holds, "{id:?} failed at {s:?} x={x}");
                }
            }
        }
    }
}
