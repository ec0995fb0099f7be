//! Exact evaluation of the multivariate Tutte polynomial on planar multigraphs,
//! two-terminal gadget synthesis, and compilation of planar independent-set and
//! 3-colouring instances into Tutte-evaluation instances with certified gaps.
//!
//! All arithmetic is exact over [`Rational`]. Heavy enumeration loops run on a
//! rayon pool when the `parallel` feature is enabled; see [`par::Exec`].

pub mod classify;
pub mod gadget;
pub mod graph;
pub mod par;
pub mod rational;
pub mod reduction;
pub mod tutte;
pub mod verify;

pub use graph::{Dart, Edge, GraphError, Rotation, WeightedMultigraph};
pub use par::Exec;
pub use rational::{Interval, Rational};
