//! Error type shared across the crate.

use thiserror::Error;

/// Errors raised by state constructors, operator algebra, and solvers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("duplicate basis index {0} in superposition terms")]
    DuplicateTerm(usize),

    #[error("cannot normalize a zero vector")]
    ZeroNorm,

    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("operator is not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),

    #[error("undefined statistic: {0}")]
    UndefinedStatistic(String),

    #[error("time step too large: delta-p = {dp:.3e} > {max:.3e} at t = {t}")]
    StepTooLarge { t: f64, dp: f64, max: f64 },

    #[error("numerical drift: {0}")]
    NumericalDrift(String),
}

pub type Result<T> = std::result::Result<T, Error>;
