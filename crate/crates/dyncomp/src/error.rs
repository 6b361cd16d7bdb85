//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by dyncomp operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter or input shape violated a precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An input value lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Not enough samples to carry out the requested estimate.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A factorization or inversion failed beyond what regularization can fix.
    #[error("numerical degeneracy: {reason} (condition estimate {condition:.3e})")]
    NumericalDegeneracy { reason: String, condition: f64 },

    /// Every optimization restart failed; diagnostics are serialized per restart.
    #[error("fit failure: all {0} restarts failed numerically")]
    FitFailure(usize),

    /// A spectral estimate was nonpositive everywhere and cannot be log-transformed.
    #[error("spectral floor: {0}")]
    SpectralFloor(String),

    /// Duplicate points give a zero nearest-neighbor distance; the caller should jitter.
    #[error("jitter required: {0} duplicate point pairs give zero kNN distance")]
    JitterRequired(usize),

    /// A kernel Gram matrix stayed non-positive-definite after jitter.
    #[error("kernel degeneracy: {0}")]
    KernelDegeneracy(String),

    /// A trajectory integration blew up.
    #[error("divergence: state norm {0:.3e} exceeded limit during integration")]
    Divergence(f64),

    /// Same-time covariance cannot be whitened.
    #[error("whitening error: {0}; consider regularize_psd first")]
    Whitening(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
