use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("page has no characters")]
    EmptyPage,

    #[error("invalid character box {id}: {reason}")]
    InvalidBox { id: usize, reason: String },

    #[error("invalid page {page_id}: {reason}")]
    InvalidPage { page_id: String, reason: String },

    #[error("malformed row {line}: {reason}")]
    MalformedRow { line: u64, reason: String },

    #[error("duplicate char id {char_id} on page {page_id}")]
    DuplicateCharId { page_id: String, char_id: String },

    #[error("box on row {line} lies outside the {width}x{height} image")]
    BoxOutOfBounds { line: u64, width: u32, height: u32 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("sequence lengths differ: ground truth {expected}, prediction {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("prediction is not a permutation of the ground-truth ids: {0}")]
    NotPermutation(String),

    #[error("query length {length} is outside 1..={max}")]
    BadLength { length: usize, max: usize },

    #[error("no prediction for page {0}")]
    MissingPrediction(String),

    #[error("page {0} appears more than once")]
    DuplicatePage(String),

    #[error("page {0} has no ground truth")]
    MissingGroundTruth(String),

    #[error("malformed prediction line {line}: {reason}")]
    MalformedPrediction { line: usize, reason: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("cannot read image size of {path}: {reason}")]
    ImageSize { path: PathBuf, reason: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
