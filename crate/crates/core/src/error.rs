use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },

    #[error("structural error: {0}")]
    Structure(String),

    #[error("unknown vertex id {0}")]
    UnknownVertex(u64),

    #[error("unknown edge id {0}")]
    UnknownEdge(u64),

    #[error("no path exists: target graph has no geometry")]
    EmptyGraph,

    #[error("{0}")]
    Usage(String),

    #[error("missing input file {}", .0.display())]
    MissingFile(PathBuf),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by how the tool was invoked rather than by the data.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Usage(_) | Error::MissingFile(_))
    }
}
