use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Pipeline stage at which a compressed stream was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Header,
    Entropy,
    Reconstruct,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Header => "header",
            Stage::Entropy => "entropy decode",
            Stage::Reconstruct => "reconstruction",
        })
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("shape mismatch: expected {expected}, got {actual}")]
    Shape { expected: String, actual: String },

    #[error("non-finite value at index {0}")]
    NonFinite(usize),

    #[error("oracle refuses input of {size} elements (limit {limit})")]
    OracleTooLarge { size: usize, limit: usize },

    #[error("invalid codec config: {0}")]
    Config(String),

    #[error("corrupt stream at {stage}: {detail}")]
    Corrupt { stage: Stage, detail: String },

    #[error("{source_name}: {detail}")]
    Format { source_name: String, detail: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn corrupt(stage: Stage, detail: impl Into<String>) -> Self {
        Error::Corrupt {
            stage,
            detail: detail.into(),
        }
    }

    pub(crate) fn format(source_name: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Format {
            source_name: source_name.into(),
            detail: detail.into(),
        }
    }

    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
