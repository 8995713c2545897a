use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = AdrtError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum AdrtError {
    /// Input size is not a 2^n x 2^n square (or does not match the declared n).
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("non-finite value {value} at index {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("index out of range: {0}")]
    Index(String),

    /// Transform or level shape does not match what an operation expects.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("missing input: {0}")]
    Missing(String),

    #[error("format error in {path}{}: {msg}", offset.map(|o| format!(" at byte {o}")).unwrap_or_default())]
    Format {
        path: PathBuf,
        offset: Option<u64>,
        msg: String,
    },

    #[error("unsupported {what} version {version}")]
    UnsupportedVersion { what: &'static str, version: u8 },

    #[error("analysis error: {0}")]
    Analysis(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl AdrtError {
    pub(crate) fn format(path: impl Into<PathBuf>, offset: Option<u64>, msg: impl Into<String>) -> Self {
        AdrtError::Format {
            path: path.into(),
            offset,
            msg: msg.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        AdrtError::Io {
            path: path.into(),
            source,
        }
    }
}
