//! Exact computations around the minimal model program at desk scale.
//!
//! - [`lattice`]: big-integer and rational linear algebra (solving,
//!   definiteness, Smith and Hermite normal forms, integer kernels).
//! - [`toric`]: singularity classes and discrepancies of toric cones.
//! - [`dual_graph`]: discrepancies of surface singularities from a
//!   resolution graph, with Du Val recognition and blow-up probes.
//! - [`surface`]: Néron–Severi lattice models of surfaces and the classical
//!   MMP on them (`(-1)`-class search, Castelnuovo contraction, nefness).
//! - [`kodaira`]: curve genus, plurigenera, Riemann–Roch, Kodaira dimension
//!   estimates and pairs on curves.
//!
//! Arithmetic is exact throughout; the only floating point in the crate is
//! the log-slope inside [`kodaira::estimate_kappa`].

pub mod dual_graph;
pub mod kodaira;
pub mod lattice;
pub mod par;
pub mod surface;
pub mod toric;

pub use lattice::{IntMatrix, IntVector, RatMatrix, RatVector, Rational};
pub use par::Execution;
