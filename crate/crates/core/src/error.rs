use std::path::PathBuf;

use thiserror::Error;

use crate::prompt::Strategy;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("mask has no foreground pixels")]
    EmptyMask,

    #[error("invalid dimensions {width}x{height}")]
    InvalidDims { width: u32, height: u32 },

    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimMismatch { expected: (u32, u32), found: (u32, u32) },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("strategy mismatch: expected {expected}, found {found}")]
    StrategyMismatch { expected: Strategy, found: Strategy },

    #[error("prompt history is empty")]
    NoPrompt,

    #[error("invalid budget {budget} for strategy {strategy}")]
    InvalidBudget { strategy: String, budget: u32 },

    #[error("no data to aggregate")]
    NoData,

    #[error("invalid concavity bins: {0}")]
    InvalidBins(String),

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("duplicate instance id `{0}`")]
    DuplicateId(String),

    #[error("missing file {}", .0.display())]
    MissingFile(PathBuf),

    #[error("{source_name}:{line}: {message}")]
    Parse { source_name: String, line: usize, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub(crate) fn parse(source_name: impl Into<String>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse { source_name: source_name.into(), line, message: message.into() }
    }

    /// Process exit status for this error: 2 for I/O failures, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } | Error::MissingFile(_) => 2,
            _ => 1,
        }
    }
}
