//! Exact combinatorial engine for the geometry of Hilbert schemes of points
//! on smooth surfaces.
//!
//! Everything is computed symbolically over the integers or rationals — no
//! floating point anywhere.  The building blocks:
//!
//! * [`partition`] — partitions with the refinement order, set
//!   decompositions, symmetry orbits, and multipartitions;
//! * [`graded`] — graded and bigraded dimension vectors with tensor and
//!   symmetric-power operations (sign-aware and sign-blind);
//! * [`surface`] — input descriptors for the underlying surface, with
//!   validation and built-in examples;
//! * [`motive`] — the partition-indexed decomposition of the Hilbert scheme
//!   and its Poincaré, Hodge, and Chow specializations;
//! * [`series`] — generating functions in one and infinitely many variables,
//!   giving a second, independent route to the same numbers;
//! * [`projector`] — a formal calculus of correspondences whose projectors
//!   realize the decomposition, checked on exact block matrices.

/// Version of the engine, for embedding in tool output.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

pub mod error;
pub mod graded;
pub mod motive;
pub mod partition;
pub mod projector;
pub mod series;
pub mod surface;

pub use error::{Error, Result};
pub use graded::{BiGradedDimension, GradedDimension};
pub use motive::{
    chow_dims_hilb, euler_hilb, hilb_decomposition, hodge_hilb, poincare_hilb,
    punctual_chow_total, MotiveDecomposition, MotiveTerm,
};
pub use partition::{
    multipartition_of, orbit_bijection_check, partition_count, Multipartition,
    MultiplicityVector, Partition, PartitionOrder, SetDecomposition,
};
pub use projector::{
    build_block_realization, compose, delta_projector, fiber_action_check, support_ledger,
    verify_completeness, verify_projector_algebra, BlockRealization, CorrespondenceElement,
    Object, QMatrix, SupportLedger, Word,
};
pub use series::{
    goettsche_series, motivic_monomial_expansion, two_path_check, MonomialExpansion,
    MonomialKey, Poly, TruncatedSeries, TwoPathReport,
};
pub use surface::SurfaceDescriptor;
