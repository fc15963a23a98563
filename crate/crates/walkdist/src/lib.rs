//! Walk distances on connected weighted multigraphs.
//!
//! For a graph with adjacency matrix A and a parameter t in (0, 1/rho(A)),
//! the walk weight matrix R = (I - tA)^{-1} collects the total weight of all
//! walks between vertex pairs. Taking logarithms of R produces a metric, the
//! walk distance, which this crate computes three independent ways:
//!
//! * directly, via matrix inversion ([`metric::walk_weights`] and
//!   [`metric::walk_distances`]);
//! * through determinants of minors of I - tA ([`metric::cofactor_distance`]);
//! * as a truncated signed expansion over circuits and alternating routes
//!   ([`routes::distance_expansion`]), the topological form that explains
//!   *which* closed figures a distance is made of.
//!
//! The circuit machinery ([`circuits`]) and the jump-digraph route machinery
//! ([`routes`]) are exposed in full so the expansions can be inspected,
//! cross-checked against each other, and verified against exact values
//! ([`verify`]). All kernels run over `f64` or exact big rationals via the
//! [`scalar::Scalar`] abstraction.

#![forbid(unsafe_code)]

pub mod circuits;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod matrix;
pub mod metric;
pub mod routes;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Arc, ArcId, Edge, EdgeId, VertexId, WeightedDigraph, WeightedMultigraph};
pub use matrix::DenseMatrix;
pub use scalar::Scalar;

/// Default tolerance for iterative methods and float comparisons.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Default iteration budget for iterative methods.
pub const DEFAULT_MAX_ITER: usize = 100_000;

/// Default budget for exhaustive walk enumerations.
pub const DEFAULT_WALK_BUDGET: usize = 10_000_000;

/// Default depth cap for exhaustive enumerations.
pub const DEFAULT_DEPTH_CAP: usize = 8;

/// Default cap on vertex count for exhaustive simple-path checks.
pub const DEFAULT_PATH_GUARD: usize = 12;
