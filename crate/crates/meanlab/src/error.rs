//! Crate-wide error type.
//!
//! Every fallible operation returns [`Error`]; domain violations are reported
//! with enough context to point at the offending value.

use thiserror::Error;

/// Errors raised by mean evaluation, matrix routines, and kernel checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input that must be strictly positive was not.
    #[error("input must be strictly positive and finite, got {value}")]
    NonPositive { value: f64 },

    /// An input that must be finite was NaN or infinite.
    #[error("{what} must be finite")]
    NonFinite { what: &'static str },

    /// A mean or kernel parameter fell outside its admissible range.
    #[error("parameter {name} = {value} outside admissible range [{lo}, {hi}]")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    /// The exponent of the matrix power mean must be nonzero; the p -> 0 limit
    /// is the geometric mean and callers select it explicitly.
    #[error("matrix power mean is undefined at p = 0; dispatch to the geometric mean instead")]
    PowerMeanZeroExponent,

    /// Two matrices that must share a dimension did not.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A matrix operation needed strict positive definiteness.
    #[error("matrix is numerically singular (min eigenvalue {lambda_min:e}, max {lambda_max:e})")]
    SingularMatrix { lambda_min: f64, lambda_max: f64 },

    /// A symmetric matrix expected to be positive semidefinite was not.
    #[error("matrix is not positive semidefinite (min eigenvalue {lambda_min:e})")]
    NotPsd { lambda_min: f64 },

    /// A scalar mean had no finite continuous extension at an eigenvalue pair.
    #[error("{mean} has no finite value at eigenvalue pair ({lambda}, {mu})")]
    UndefinedAtEigenpair {
        mean: String,
        lambda: f64,
        mu: f64,
    },

    /// Quadrature needs at least two nodes.
    #[error("quadrature requires at least 2 nodes, got {nodes}")]
    TooFewNodes { nodes: usize },

    /// Gram matrices need pairwise distinct evaluation points.
    #[error("kernel evaluation points must be pairwise distinct (points {i} and {j} coincide)")]
    DuplicatePoints { i: usize, j: usize },

    /// A textual spec (kernel family, mean kind, matrix file) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// The eigensolver failed to reach its off-diagonal threshold.
    #[error("eigensolver did not converge within {sweeps} sweeps (off-diagonal mass {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
