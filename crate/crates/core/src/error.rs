use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    /// The naive model is not semistable at `prime`; local data must come
    /// from an override.
    #[error("p={prime} not semistable ({criterion})")]
    NotSemistable { prime: BigUint, criterion: String },

    /// A guaranteed algebraic identity failed. Always a bug.
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("data integrity failure: {0}")]
    DataIntegrity(String),

    #[error("local factor at p={prime} is known to degree {have}, degree {needed} is required")]
    InsufficientData { prime: u64, have: usize, needed: usize },

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("cannot enumerate a field with {0} elements")]
    FieldTooLarge(String),

    #[error("failed to factor {0}")]
    Factorization(String),
}
