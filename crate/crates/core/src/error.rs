use std::path::PathBuf;

use thiserror::Error;

use crate::scheme::Dims;

pub type Result<T, E = FmmError> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// A scheme that fails Brent verification is *not* an error: that outcome is
/// carried as data in [`crate::verify::BrentReport`].
#[derive(Debug, Error)]
pub enum FmmError {
    #[error("term {term}: {message}")]
    Structural { term: usize, message: String },

    #[error("term {term}: {factor} factor has no nonzero coefficient")]
    DeadTerm { term: usize, factor: &'static str },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: Dims, got: Dims },

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("peel violation: live coefficient at ({row}, {col}) lies outside the kept mask")]
    PeelViolation { row: usize, col: usize },

    #[error("input scheme `{0}` is not Brent-verified")]
    Unverified(String),

    #[error("invalid rational `{0}`")]
    Rational(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid file: {0}")]
    Validation(String),

    #[error("invalid scheme specifier `{spec}`: {message}")]
    Spec { spec: String, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl FmmError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        FmmError::Io {
            path: path.into(),
            source,
        }
    }
}
