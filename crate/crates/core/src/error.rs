use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{origin}:{line}:{column}: {message}")]
    Parse {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("alignment error at token {index}: {message}")]
    Alignment { index: usize, message: String },

    #[error("duplicate relation in {doc_id}: {key}")]
    DuplicateRelation { doc_id: String, key: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },

    #[error(transparent)]
    Stream(#[from] io::Error),
}

impl Error {
    pub(crate) fn parse(origin: &str, line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            origin: origin.to_owned(),
            line,
            column,
            message: message.into(),
        }
    }

    pub fn io(path: &std::path::Path, source: io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
