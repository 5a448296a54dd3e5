use thiserror::Error;

pub type Result<T> = std::result::Result<T, FeError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FeError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Precision escalation hit its ceiling.
    #[error("numeric failure: {0}")]
    NumericFailure(String),

    /// The series is cut off too early for the requested accuracy.
    #[error("cutoff M = {have} is too small at t = {t}; M >= {required} is required")]
    InsufficientM { have: u64, required: u64, t: f64 },

    #[error(transparent)]
    Core(#[from] hecl_core::Error),
}
