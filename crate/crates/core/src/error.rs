use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

/// Position of an offending token inside a text input (both 1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub token: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, token {}", self.line, self.token)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed text input with a known position.
    #[error("{message} at {location}")]
    Parse { location: Location, message: String },

    /// Malformed text input where only a description is available.
    #[error("{0}")]
    Format(String),

    /// Well-formed input that violates a domain invariant.
    #[error("{0}")]
    Invalid(String),

    #[error("cell ({row}, {col}) out of range for {n_rows}x{n_cols} grid")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        n_rows: usize,
        n_cols: usize,
    },

    #[error("degenerate regressor: x is constant")]
    DegenerateRegressor,

    #[error("invalid run configuration: {0}")]
    Config(String),

    /// Nothing to analyse (empty grid, no parcels, too few records).
    #[error("{0}")]
    Empty(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Wraps a parse error with the file it came from.
    #[error("{path}: {source}")]
    InFile {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, token: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            location: Location { line, token },
            message: message.into(),
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::Invalid(message.into())
    }

    pub(crate) fn in_file(self, path: impl Into<PathBuf>) -> Self {
        Error::InFile {
            path: path.into(),
            source: Box::new(self),
        }
    }

    /// Innermost error, skipping file wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::InFile { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
