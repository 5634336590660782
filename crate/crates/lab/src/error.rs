use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid step distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("at least one trial is required")]
    NoTrials,

    #[error("pattern length must be at least 1")]
    EmptyPattern,

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("{what} {size} exceeds the limit of {limit}")]
    SizeTooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("classes do not partition the patterns: {0}")]
    NotAPartition(String),

    #[error(transparent)]
    Core(#[from] ordwalk_core::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
