use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// The event file is not a JSON array of objects.
    #[error("malformed event file at byte {offset} (line {line}, column {column}): {message}")]
    MalformedEvents {
        offset: usize,
        line: usize,
        column: usize,
        message: String,
    },

    /// An event is missing a field that its kind requires.
    #[error("event #{index} ({event_id}): {message}")]
    InvalidEvent {
        index: usize,
        event_id: String,
        message: String,
    },

    #[error("pajek line {line}: {message}")]
    Pajek { line: usize, message: String },

    #[error("formation file line {line}: {message}")]
    Formation { line: usize, message: String },

    #[error("partitions cover different node sets; only in left: {only_left:?}, only in right: {only_right:?}")]
    NodeSetMismatch {
        only_left: Vec<String>,
        only_right: Vec<String>,
    },

    #[error("manifest: {0}")]
    Manifest(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
