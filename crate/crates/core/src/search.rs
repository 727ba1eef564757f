//! Node budgets and the first-class indeterminate result state.

use serde::Serialize;

/// Default backtracking-node budget for the exact searches.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Result of a budgeted exact search. `Indeterminate` is a first-class
/// state: no caller may silently downgrade it to a boolean.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SearchOutcome<T> {
    Complete(T),
    Indeterminate { nodes_used: u64 },
}

impl<T> SearchOutcome<T> {
    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchOutcome<U> {
        match self {
            SearchOutcome::Complete(t) => SearchOutcome::Complete(f(t)),
            SearchOutcome::Indeterminate { nodes_used } => {
                SearchOutcome::Indeterminate { nodes_used }
            }
        }
    }

    pub fn complete(self) -> Option<T> {
        match self {
            SearchOutcome::Complete(t) => Some(t),
            SearchOutcome::Indeterminate { .. } => None,
        }
    }

    pub fn is_indeterminate(&self) -> bool {
        matches!(self, SearchOutcome::Indeterminate { .. })
    }
}

/// Counts search nodes against a limit.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    /// Records one node; false once the limit is exceeded.
    #[inline]
    pub fn tick(&mut self) -> bool {
        self.used += 1;
        self.used <= self.limit
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn remaining(&self) -> u64 {
        self.limit.saturating_sub(self.used)
    }
}
