//! Exact evaluation of Z(G; q, w) and T(G; x, y).
//!
//! Two independent evaluation paths — subset enumeration and memoised
//! deletion–contraction with series/parallel pre-reductions — must agree exactly.

mod brute;
mod delcon;
mod eval;
mod partitions;
mod poly;

use thiserror::Error;

use crate::graph::GraphError;
use crate::rational::Rational;

pub use brute::{kappa_sums, rank_counts, z_bruteforce, z_bruteforce_report, DEFAULT_BRUTE_CAP};
pub use delcon::{z_delcon, z_delcon_report, DEFAULT_DELCON_BUDGET};
pub use eval::{chromatic_flow_eval, colour_sum, colour_sum_with, tutte_eval, tutte_eval_report, tutte_subset_sum, Which, DEFAULT_COLOUR_BUDGET};
pub use partitions::{z_terminal_partitions, PartitionTable, TerminalPartition};
pub use poly::{interpolate, poly_eval, z_coeffs_in_q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TutteError {
    #[error("{what}: size {actual} exceeds cap {cap}")]
    CapExceeded { what: &'static str, cap: usize, actual: usize },
    #[error("deletion-contraction budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("terminal-partition system is singular at this q")]
    Singular,
    #[error("invalid terminals: {0}")]
    BadTerminals(String),
    #[error("colour count must be a positive integer")]
    BadColourCount,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    SubsetEnumeration,
    DeletionContraction,
    TutteRecursion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalReport {
    pub value: Rational,
    pub method: Method,
    /// Subsets visited, or recursion nodes for deletion–contraction.
    pub work: u64,
    pub memo_hits: u64,
}
