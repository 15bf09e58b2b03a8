use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the clustering pipeline.
#[derive(Debug, Error)]
pub enum SvcError {
    #[error("input file not found: {}", .0.display())]
    MissingFile(PathBuf),
    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("non-numeric cell at row {row}")]
    NonNumeric { row: usize },
    #[error("ragged row {row}: expected {expected} columns, found {found}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("label at row {row} is {value}, expected +1 or -1")]
    BadLabel { row: usize, value: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero vector at index {index}")]
    ZeroVector { index: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("matrix is not symmetric/Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("linear system is singular (condition estimate {condition:e})")]
    Singular { condition: f64 },
    #[error("all eigenvalues fall below the floor {floor:e}")]
    EigenvaluesBelowFloor { floor: f64 },
    #[error("vertex {0} is already marked")]
    AlreadyMarked(usize),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl SvcError {
    /// Process exit code for the CLI: 2 for usage/input problems, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            SvcError::MissingFile(_)
            | SvcError::NonNumeric { .. }
            | SvcError::RaggedRow { .. }
            | SvcError::BadLabel { .. }
            | SvcError::DimensionMismatch { .. }
            | SvcError::ZeroVector { .. }
            | SvcError::InvalidArgument(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, SvcError>;
