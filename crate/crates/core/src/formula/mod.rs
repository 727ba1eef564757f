//! Exact evaluation of the closed-form bound polynomials, the piecewise
//! extremal formulas, the shift identities, and the inequality facts.
//!
//! Everything here is integer arithmetic; expressions with halves are
//! decided by comparing doubled sides. No floating point anywhere.

pub mod facts;
pub mod piecewise;
pub mod poly;

pub use facts::{scan_fact_inequalities, Fact, FactScanConfig, FactScanReport};
pub use piecewise::{
    ar_first_interval, ex_abhp, xi_from_constructions, xi_piecewise, PiecewiseValue,
};
pub use poly::{
    check_identity, poly_f, poly_g, poly_h, poly_q1, IdentityId, IdentityVerdict,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational value; reports of half-integer identities use this.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("shift x={x} makes {field} negative (value {value})")]
    NegativeShift { field: &'static str, value: u64, x: u64 },
    #[error("t={t} outside [0, n/3] for n={n}")]
    TOutOfRange { n: u64, t: u64 },
    #[error("branch {branch} invalid at (n={n}, t={t}): {constraint}")]
    InvalidBranch { branch: u8, n: u64, t: u64, constraint: String },
    #[error("no valid construction for (n={n}, t={t})")]
    NoValidConstruction { n: u64, t: u64 },
    #[error("t={t} outside the proven hypothesis t <= (2n-6)/9 - 2 for n={n} (pass override to evaluate anyway)")]
    OutsideHypothesis { n: u64, t: u64 },
    #[error("empty admissible set for the requested range")]
    EmptyAdmissibleSet,
    #[error("construction error: {0}")]
    Construction(String),
}

/// The counter vector `(tau1..tau4, mu, iota)` the bound polynomials take.
///
/// When derived from a graph on `n` vertices the fields satisfy
/// `3*(tau1+tau2+tau3+tau4) + 2*mu + iota = n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartitionStats {
    pub tau1: u64,
    pub tau2: u64,
    pub tau3: u64,
    pub tau4: u64,
    pub mu: u64,
    pub iota: u64,
}

impl PartitionStats {
    pub fn new(tau1: u64, tau2: u64, tau3: u64, tau4: u64, mu: u64, iota: u64) -> Self {
        PartitionStats { tau1, tau2, tau3, tau4, mu, iota }
    }

    pub fn vertex_total(&self) -> u64 {
        3 * (self.tau1 + self.tau2 + self.tau3 + self.tau4) + 2 * self.mu + self.iota
    }
}

/// Problem parameters `(n, t)` with `0 <= 3t <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemParams {
    pub n: u64,
    pub t: u64,
}

impl ProblemParams {
    pub fn new(n: u64, t: u64) -> Result<Self, FormulaError> {
        if n < 3 || 3 * t > n {
            return Err(FormulaError::TOutOfRange { n, t });
        }
        Ok(ProblemParams { n, t })
    }
}
