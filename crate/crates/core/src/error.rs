use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("empty corpus for language '{0}'")]
    EmptyCorpus(String),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("degenerate normalization: {0}")]
    DegenerateNormalization(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("degenerate embedding for language '{0}'")]
    DegenerateEmbedding(String),

    #[error("missing language '{0}'")]
    MissingLanguage(String),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("undefined correlation: {0}")]
    UndefinedCorrelation(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("degenerate split: {0}")]
    DegenerateSplit(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("unknown task '{0}'")]
    UnknownTask(String),

    #[error("incomplete features: {0}")]
    IncompleteFeatures(String),

    #[error("no scoreable candidates for target '{0}'")]
    NoScoreableCandidates(String),

    #[error("key mismatch: {0}")]
    KeyMismatch(String),

    #[error("missing file {0}")]
    MissingFile(PathBuf),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(path: impl Into<String>, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            msg: msg.into(),
        }
    }

    /// Whether the error stems from bad user input rather than an internal fault.
    pub fn is_user_error(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}
