//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by estimators, dataset construction, generators, and the
/// experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite value in input row {row}")]
    NonFiniteInput { row: usize },

    #[error("at least {needed} samples required, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "distance covariance came out {value:.3e}, far below zero; \
         the centering is inconsistent with its inputs"
    )]
    BrokenCentering { value: f64 },

    #[error("covariance matrix is not positive definite (Cholesky failed at pivot {pivot})")]
    NotPositiveDefinite { pivot: usize },

    #[error("missing or unparseable value at data row {row}, column '{column}'")]
    MissingValue { row: usize, column: String },

    #[error("unknown response '{name}'; available columns: {available}")]
    UnknownResponse { name: String, available: String },

    #[error("column index {index} out of range for p = {p}")]
    ColumnOutOfRange { index: usize, p: usize },

    #[error("true set must not be empty")]
    EmptyTrueSet,

    #[error("{failed} of {total} replications failed, exceeding the 5% budget")]
    ReplicationBudget { failed: usize, total: usize },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
