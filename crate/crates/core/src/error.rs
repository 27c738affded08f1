use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("file not found: {}", path.display())]
    FileNotFound { path: PathBuf },

    #[error("unsupported image format for {}: {reason}", path.display())]
    UnsupportedFormat { path: PathBuf, reason: String },

    #[error("failed to decode {}: {reason}", path.display())]
    DecodeError { path: PathBuf, reason: String },

    #[error("failed to write {}: {reason}", path.display())]
    WriteError { path: PathBuf, reason: String },

    #[error("invalid image dimensions {width}x{height}: {reason}")]
    InvalidDimensions {
        width: usize,
        height: usize,
        reason: String,
    },

    #[error("matrix entry at ({row}, {col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("image {width}x{height} is smaller than the {min_width}x{min_height} minimum")]
    ImageTooSmall {
        width: usize,
        height: usize,
        min_width: usize,
        min_height: usize,
    },

    #[error("SVD of a {rows}x{cols} matrix did not converge")]
    ConvergenceFailure { rows: usize, cols: usize },

    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("noise threshold k = {k} is out of range [0, {max}]")]
    ThresholdOutOfRange { k: usize, max: usize },

    #[error("statistic undefined: all pixels are equal")]
    ZeroVariance,

    #[error("operation requires a non-empty set")]
    EmptySet,

    #[error("class id {class} is outside the declared class set (0..{num_classes})")]
    UnknownClass { class: u32, num_classes: u32 },

    #[error("invalid registry: {0}")]
    Registry(String),

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures of the numerical core rather than of inputs or I/O.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::ConvergenceFailure { .. } | Error::NonFiniteEntry { .. }
        )
    }

    pub fn is_io(&self) -> bool {
        matches!(
            self,
            Error::FileNotFound { .. }
                | Error::UnsupportedFormat { .. }
                | Error::DecodeError { .. }
                | Error::WriteError { .. }
                | Error::Io { .. }
        )
    }
}
