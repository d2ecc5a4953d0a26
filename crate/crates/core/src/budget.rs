//! Explicit search limits for the exponential-time solvers.

use crate::error::{Error, Result};

/// Limits checked by the exact solvers before (and during) their search.
/// Exceeding one yields [`Error::BudgetExceeded`]; nothing degrades silently.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Memoized states / search nodes an exact search may visit.
    pub max_states: u64,
    /// Largest `m` for the subset dynamic program behind Kemeny.
    pub kemeny_max_m: usize,
    /// Largest `n` for the Young sub-multiset search.
    pub young_max_n: usize,
    /// Largest number of subsets in an X3C brute force.
    pub x3c_max_subsets: usize,
    /// Largest `m` for searches that enumerate all `m!` rankings.
    pub enumeration_max_m: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_states: 5_000_000,
            kemeny_max_m: 16,
            young_max_n: 20,
            x3c_max_subsets: 25,
            enumeration_max_m: 8,
        }
    }
}

impl Budget {
    pub fn with_max_states(mut self, max_states: u64) -> Self {
        self.max_states = max_states;
        self
    }

    pub(crate) fn check(&self, what: &'static str, needed: u128, limit: u128) -> Result<()> {
        if needed > limit {
            return Err(Error::BudgetExceeded { what, needed, limit });
        }
        Ok(())
    }

    pub(crate) fn check_states(&self, what: &'static str, visited: u64) -> Result<()> {
        self.check(what, visited as u128, self.max_states as u128)
    }
}
