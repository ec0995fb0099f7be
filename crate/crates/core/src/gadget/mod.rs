//! Two-terminal gadgets: effective weights, series/parallel calculus,
//! target-weight synthesis and the constants ledger for the MIS reduction.

mod compose;
mod implement;
mod params;
mod shift;
mod sp;
mod walk;

use thiserror::Error;

use crate::graph::GraphError;
use crate::tutte::TutteError;

pub use compose::{
    effective_weight, parallel_series_weight, splice_gadgets, substitute_edge, thicken_stretch_weight, Composition,
    Implementation, Repetition, ShiftPoint,
};
pub use implement::{cubic_f, implement_a, implement_b, implement_beta};
pub use params::{param_set, param_set_relaxed, Case, ParamSet};
pub use shift::{shift_certificate, ShiftCertificate, ShiftRegion};
pub use sp::{SpGadget, SpValue, TwoTerminalGadget, DEFAULT_MATERIALIZE_CAP};
pub use walk::{hyperbola_walk, BasePoint, Bootstrap, Damper, WalkBase, WalkPlan};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("q must be non-zero")]
    ZeroQ,
    #[error("series composition is degenerate (q + w1 + w2 = 0)")]
    DegenerateSeries,
    #[error("stretch is degenerate ((1 + q/α)^k = 1)")]
    DegenerateStretch,
    #[error("non-implementing gadget: Z_s|t = 0")]
    NonImplementing,
    #[error("k must be at least 1")]
    BadMultiplicity,
    #[error("tolerance must lie in (0, 1]")]
    BadTolerance,
    #[error("target must be non-zero")]
    ZeroTarget,
    #[error("missing base point: {0}")]
    MissingBase(String),
    #[error("bootstrap failed: {0}")]
    Bootstrap(String),
    #[error("walk failed: {0}")]
    WalkFailed(String),
    #[error("q = {0} lies in [0, 5]")]
    QInExcludedRange(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("no certificate (open or exact-easy point): {0}")]
    NoCertificate(String),
    #[error("edge {0} does not exist")]
    MissingEdge(usize),
    #[error(transparent)]
    Tutte(#[from] TutteError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
