//! Exact search over colorings and homomorphisms.
//!
//! Every search is bounded by an optional node budget. Running out of budget is
//! reported as its own outcome and never as a verdict.

mod biclique;
mod chromatic;
mod cnf;
mod fractional;
mod hom;
mod local;
mod partitions;

pub use biclique::find_multicolored_biclique;
pub use chromatic::{chromatic_number, greedy_clique, greedy_coloring, is_k_colorable};
pub use cnf::{export_hom_cnf, Cnf};
pub use fractional::{
    fractional_chromatic, fractional_chromatic_with_certificate, maximal_independent_sets,
    rational, FractionalSolution, Rational, DEFAULT_FRACTIONAL_LIMIT,
};
pub use hom::{find_homomorphism, HomOptions, HomomorphismMap, TargetSymmetry};
pub use local::{local_chromatic_number, local_colorfulness, LocalMethod, PARTITION_LIMIT};
pub use partitions::{enumerate_proper_partitions, ProperPartitions};

use crate::error::Error;

/// Node-count limit for a single search. `None` means unlimited.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget { max_nodes: None };

    pub fn nodes(max_nodes: u64) -> Budget {
        Budget {
            max_nodes: Some(max_nodes),
        }
    }

    pub(crate) fn counter(self) -> NodeCounter {
        NodeCounter {
            used: 0,
            limit: self.max_nodes,
        }
    }
}

#[derive(Debug)]
pub(crate) struct NodeCounter {
    used: u64,
    limit: Option<u64>,
}

impl NodeCounter {
    /// Counts one node; false once the limit is passed.
    pub(crate) fn tick(&mut self) -> bool {
        self.used += 1;
        self.limit.is_none_or(|l| self.used <= l)
    }

    pub(crate) fn used(&self) -> u64 {
        self.used
    }

    pub(crate) fn exceeded(&self) -> Error {
        Error::BudgetExceeded(self.limit.unwrap_or(self.used))
    }
}

/// Result of an exhaustive search for a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The search space was exhausted without a witness.
    NoneExists,
    BudgetExceeded,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_none_exists(&self) -> bool {
        matches!(self, SearchOutcome::NoneExists)
    }
}
