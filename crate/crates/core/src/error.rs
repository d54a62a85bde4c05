use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the open domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("singularity: {0}")]
    Singularity(String),

    #[error("pole: evaluation point coincides with zero {0}")]
    Pole(String),

    #[error("root finder did not converge after {iterations} iterations (worst residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    /// Critical point too close to the unit circle to give a trustworthy death time.
    #[error("ill-conditioned: {0}")]
    IllConditioned(String),

    #[error("invalid bar ({birth}, {death}]: birth must be strictly below death")]
    InvalidBar { birth: f64, death: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
