use thiserror::Error;

/// Errors produced by state-space constructions and verifications.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max |A - A*| entry {deviation:.3e} exceeds {tolerance:.3e})")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("eigensolver did not converge")]
    NumericalFailure,

    #[error("state is outside the reduced state space: {reason}")]
    NotInReducedSpace { reason: String },

    #[error("eigenvalues {j} and {ref_index} coincide (gap {gap:.3e}): no periodic angle advances for this pair")]
    DegenerateFrequency { j: usize, ref_index: usize, gap: f64 },

    #[error("invalid chart: {reason}")]
    InvalidChart { reason: String },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("could not build {requested} level-set pairs (built {built})")]
    InsufficientSamples { requested: usize, built: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
