//! Error type shared by all modules.
//!
//! Diagnostic payloads are stored as `f64` regardless of the working scalar
//! so the error type stays non-generic.

/// Errors produced by the toolkit.
///
/// The CLI maps these onto exit codes: malformed data is "invalid input"
/// (exit 2), while a mathematical "no" (an infeasible alpha, an obstructed
/// construction, a symbol outside the construction's hypotheses) is reported
/// separately (exit 3) so scripts can tell the two apart.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_diagonal:e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("alpha {alpha} is infeasible for eigenvalue pair ({low}, {high}): {detail}")]
    InfeasibleAlpha {
        alpha: f64,
        low: usize,
        high: usize,
        detail: String,
    },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("model error: {0}")]
    Model(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("insufficient truncation: {0}")]
    InsufficientTruncation(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("obstruction: {0}")]
    Obstruction(String),

    #[error("partition exhausted after {steps} shrink steps: produced {produced} of {requested} sets")]
    PartitionExhausted {
        steps: usize,
        produced: usize,
        requested: usize,
    },

    #[error("certificate failed: {0}")]
    CertificateFailed(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
