use std::path::PathBuf;

use hecl_fe::FeError;
use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, PipelineError>;

#[derive(Debug, Error)]
pub enum PipelineError {
    /// Malformed JSON or a schema violation.
    #[error("{file}: {message}")]
    Parse { file: String, message: String },

    #[error("invalid input: {0}")]
    Input(String),

    /// A bad prime whose local data cannot be computed and was not
    /// supplied as an override.
    #[error("p={prime} needs an override ({reason})")]
    OverrideRequired { prime: BigUint, reason: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] hecl_core::Error),

    #[error(transparent)]
    Fe(#[from] FeError),
}

/// Process exit status for a failed run.
pub mod exit {
    pub const VERIFIED: i32 = 0;
    pub const INTERNAL: i32 = 1;
    pub const NOT_VERIFIED: i32 = 2;
    pub const NOT_SEMISTABLE: i32 = 3;
    pub const INVALID_INPUT: i32 = 4;
}

impl PipelineError {
    pub fn exit_code(&self) -> i32 {
        use hecl_core::Error as E;
        match self {
            Self::Parse { .. } | Self::Input(_) | Self::Io { .. } => exit::INVALID_INPUT,
            Self::OverrideRequired { .. } => exit::NOT_SEMISTABLE,
            Self::Core(E::NotSemistable { .. }) => exit::NOT_SEMISTABLE,
            Self::Core(
                E::InvalidCurve(_) | E::InvalidArgument(_) | E::Configuration(_) | E::InsufficientData { .. },
            ) => exit::INVALID_INPUT,
            Self::Fe(FeError::InsufficientM { .. }) => exit::INVALID_INPUT,
            Self::Fe(FeError::Core(e)) => Self::Core(e.clone()).exit_code(),
            _ => exit::INTERNAL,
        }
    }
}
