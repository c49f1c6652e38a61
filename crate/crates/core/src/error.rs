use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not positive definite (pivot {value:e} at index {index})")]
    NotPositiveDefinite { index: usize, value: f64 },

    #[error("matrix is not symmetric: entry ({row}, {col}) differs from its transpose")]
    Asymmetric { row: usize, col: usize },

    #[error("column {0} has zero variance")]
    ZeroVariance(usize),

    #[error("value {0} is outside the open interval (-1, 1)")]
    OutOfRange(f64),

    #[error("diagonal entry {0} is not positive")]
    NonpositiveDiagonal(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("data matrix needs at least {needed} {what}, found {found}")]
    TooSmall { what: &'static str, needed: usize, found: usize },

    #[error("probability {0} is not in [0, 1]")]
    InvalidProbability(f64),

    #[error("invalid attachment count m = {m} for p = {p}")]
    InvalidM { m: usize, p: usize },

    #[error("invalid neighbor count k = {k} for p = {p} (k must be even with 2 <= k < p)")]
    InvalidK { k: usize, p: usize },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter { name: &'static str, value: f64, reason: &'static str },

    #[error("local covariance is singular")]
    SingularLocalCovariance,

    #[error("insufficient samples: n - |Z| - 3 = {0} < 1")]
    InsufficientSamples(i64),

    #[error("graphical lasso did not converge after {0} outer iterations")]
    NonConvergence(usize),

    #[error("ROC curve has no valid points")]
    EmptyCurve,

    #[error("curves do not share a parameter grid")]
    GridMismatch,

    #[error("sweep is empty")]
    EmptySweep,

    #[error("{0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("ragged row {0}")]
    Ragged(usize),

    #[error("non-numeric cell at row {row}, column {col}")]
    NonNumeric { row: usize, col: usize },
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
