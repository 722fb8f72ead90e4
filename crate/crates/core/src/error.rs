//! Library error type.

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("query syntax error: {0}")]
    QuerySyntax(String),

    #[error("empty query sequence")]
    EmptyQuery,

    #[error("derived-pattern arity {r} out of range for a {n}-term sequence")]
    ArityOutOfRange { r: usize, n: usize },

    #[error("{path}:{line}: malformed structures record: {message}")]
    MalformedRecord {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("structures format version mismatch: found {found:?}, expected {expected:?}")]
    VersionMismatch { found: String, expected: String },

    #[error("corpus store is empty")]
    EmptyStore,

    #[error("unknown retrieval model: {0}")]
    UnknownModel(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
