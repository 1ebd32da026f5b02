//! Search limits shared by every bounded search in the crate.
//!
//! Every search either finishes exactly or fails with
//! [`Error::BudgetExceeded`](crate::Error::BudgetExceeded); nothing is
//! silently truncated.

use crate::error::{Error, Resource, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` accepted by poset enumeration.
    pub poset_max_n: usize,
    /// Backtracking nodes per homomorphism search.
    pub search_nodes: u64,
    /// Subuniverses (or congruences) collected per enumeration.
    pub subalgebras: u64,
    /// Cardinality of the ambient product a free algebra is built in.
    pub free_cells: u64,
    /// Assignments visited per rule or sentence check.
    pub assignments: u64,
    /// Largest carrier that may be turned into full operation tables.
    pub materialize: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            poset_max_n: 6,
            search_nodes: 50_000_000,
            subalgebras: 1 << 16,
            free_cells: 1 << 24,
            assignments: 1 << 26,
            materialize: 4096,
        }
    }
}

/// Counts steps against a fixed limit.
#[derive(Debug)]
pub(crate) struct Meter {
    resource: Resource,
    limit: u64,
    used: u64,
}

impl Meter {
    pub(crate) fn new(resource: Resource, limit: u64) -> Self {
        Meter { resource, limit, used: 0 }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(self.exceeded())
        } else {
            Ok(())
        }
    }

    pub(crate) fn exceeded(&self) -> Error {
        Error::BudgetExceeded { resource: self.resource, limit: self.limit }
    }
}

/// `base^exp`, or `None` on overflow.
pub(crate) fn checked_pow(base: u64, exp: u64) -> Option<u64> {
    let exp = u32::try_from(exp).ok()?;
    base.checked_pow(exp)
}
