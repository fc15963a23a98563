//! Error type shared across the library.

use thiserror::Error;

/// Errors raised by graph construction, numeric kernels, and expansions.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A parameter failed basic validation (non-positive t, bad vertex id, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The graph has no vertices.
    #[error("empty graph")]
    EmptyGraph,

    /// An operation that needs a connected graph got a disconnected one.
    #[error("graph is not connected")]
    NotConnected,

    /// t is outside the open interval (0, 1/rho) on which walk weights converge.
    #[error("t = {t} is outside (0, {bound}) (spectral radius {rho})")]
    ParameterOutOfRange { t: f64, rho: f64, bound: f64 },

    /// A matrix that must be inverted is singular (or numerically so).
    #[error("matrix is singular")]
    SingularMatrix,

    /// An iterative method did not converge within its iteration budget.
    #[error("{0} did not converge within {1} iterations")]
    NonConvergence(&'static str, usize),

    /// An exhaustive enumeration would exceed the configured budget.
    #[error("enumeration guard exceeded: {walks} walks generated, budget {budget}")]
    GuardExceeded { walks: usize, budget: usize },

    /// The operation is not defined for graphs this small.
    #[error("unsupported: operation requires at least {min} vertices, graph has {n}")]
    Unsupported { min: usize, n: usize },

    /// An exhaustive check was asked for on a graph above its size guard.
    #[error("graph too large for exhaustive check: {n} vertices exceeds guard {max}")]
    TooLargeForExhaustiveCheck { n: usize, max: usize },

    /// A truncated expansion cannot converge because the spectral radius is >= 1.
    #[error("expansion diverges: spectral radius {rho} >= 1")]
    Divergence { rho: f64 },

    /// Two computations that must agree did not; indicates a bug, not bad input.
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
