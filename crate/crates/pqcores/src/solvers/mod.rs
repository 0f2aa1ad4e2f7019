//! Exact combinatorial search kernels: maximum clique (branch-and-bound with
//! greedy-colouring bounds), chromatic number by iterated k-colourability,
//! homomorphism/retraction search as a backtracking CSP, and orbit-based
//! transitivity checking.
//!
//! Every search is budgeted; running out of nodes or time yields an explicit
//! indeterminate outcome with the best known bounds, never a silent guess.

mod clique;
mod hom;
mod orbits;

pub use clique::{clique_number, clique_number_jobs, independence_number};
pub use hom::{
    chromatic_number, find_constrained_homomorphism, find_embedding, find_homomorphism,
    find_retraction, find_retraction_capped, ColoringResult, ConstraintMode, HomConstraint,
    HomSearch,
};
pub use orbits::{orbit_transitivity_check, TransitivityReport};

use std::time::{Duration, Instant};

/// Node and wall-clock limits for a single solver call.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    pub node_limit: u64,
    pub time_limit: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { node_limit: 100_000_000, time_limit: Duration::from_secs(300) }
    }
}

impl SearchBudget {
    pub fn new(node_limit: u64, time_limit: Duration) -> Self {
        SearchBudget { node_limit, time_limit }
    }

    pub fn seconds(secs: u64) -> Self {
        SearchBudget { time_limit: Duration::from_secs(secs), ..Default::default() }
    }

    pub(crate) fn start(&self) -> BudgetTracker {
        self.start_with_deadline(Instant::now() + self.time_limit)
    }

    pub(crate) fn start_with_deadline(&self, deadline: Instant) -> BudgetTracker {
        BudgetTracker { nodes: 0, node_limit: self.node_limit, deadline, exhausted: false }
    }
}

/// Mutable per-search counter. `tick` returns false once the budget is gone;
/// the clock is only consulted every 4096 nodes.
pub(crate) struct BudgetTracker {
    nodes: u64,
    node_limit: u64,
    deadline: Instant,
    exhausted: bool,
}

impl BudgetTracker {
    #[inline]
    pub(crate) fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        if self.nodes > self.node_limit
            || (self.nodes & 0xfff == 0 && Instant::now() > self.deadline)
        {
            self.exhausted = true;
        }
        !self.exhausted
    }

    pub(crate) fn is_exhausted(&self) -> bool {
        self.exhausted
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes
    }
}

/// Outcome of an exact optimisation: the value with a verified witness, or
/// the bracketing bounds reached before the budget ran out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValueResult {
    Exact { value: usize, witness: Vec<usize> },
    Indeterminate { lower: usize, upper: usize, witness: Vec<usize>, nodes: u64 },
}

impl ValueResult {
    pub fn exact_value(&self) -> Option<usize> {
        match self {
            ValueResult::Exact { value, .. } => Some(*value),
            ValueResult::Indeterminate { .. } => None,
        }
    }

    pub fn witness(&self) -> &[usize] {
        match self {
            ValueResult::Exact { witness, .. } => witness,
            ValueResult::Indeterminate { witness, .. } => witness,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ValueResult::Exact { .. })
    }
}
