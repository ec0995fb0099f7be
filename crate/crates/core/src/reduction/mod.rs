//! Compilation of decision instances into Tutte-evaluation instances: the
//! Y-gadget assembly Ĝ for planar independent set with a certified gap, the
//! colouring reduction via thickening, and the three-weight shift pipeline.

mod assembly;
mod certify;
mod colouring;
mod gamma;
mod pipeline;
mod sdt;
mod ygadget;

use thiserror::Error;

use crate::gadget::GadgetError;
use crate::graph::GraphError;
use crate::tutte::TutteError;

pub use assembly::{assemble_ghat, Assembled, Assembly, EdgeRole, GhatInstance, Port};
pub use certify::{
    choose_delta, decide_mis, psi_from_params, psi_threshold, reduce_mis, z_assembled_certified, z_ghat_certified,
    ClassBound, CertifiedZ, MisReduction, MisVerdict, SizeClass,
};
pub use colouring::{reduce_colouring, ColouringReduction, ColouringVerdict};
pub use gamma::{gamma_check, gamma_sweep, GammaCase, GammaReport, GammaSweep};
pub use pipeline::{shift_pipeline, t_from_z, ShiftPipeline};
pub use sdt::{independent_class_closed_form, z_sdt_all, z_sdt_exact, Pattern, PrefactorReading, SdtPartition};
pub use ygadget::{y_closed_forms, y_gadget, YGadgetReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("q must be non-zero")]
    ZeroQ,
    #[error("host graph must be cubic: vertex {vertex} has degree {degree}")]
    NotCubic { vertex: usize, degree: usize },
    #[error("host graph is not planar")]
    NotPlanar,
    #[error("host graph has a loop at vertex {0}")]
    LoopInHost(usize),
    #[error("K = {k} out of range: {reason}")]
    BadBound { k: usize, reason: String },
    #[error("assembly is malformed: {0}")]
    BadAssembly(String),
    #[error("Z_0|1|2 vanishes; the threshold is undefined")]
    DegenerateSeparated,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{what}: size {actual} exceeds cap {cap}")]
    CapExceeded { what: &'static str, cap: usize, actual: usize },
    #[error("weight mismatch: {0}")]
    WeightMismatch(String),
    #[error("point is not on the lower q = 3 branch: {0}")]
    OffBranch(String),
    #[error(transparent)]
    Tutte(#[from] TutteError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
