//! Crate-wide error type with exit-code classification.

use std::path::PathBuf;

use windrank_core::cascade::NetError;
use windrank_core::dataset::DatasetError;
use windrank_core::matrix::MatrixError;
use windrank_core::metrics::MetricsError;
use windrank_core::relief::ReliefError;
use windrank_core::scale::ScaleError;
use windrank_core::train::TrainError;
use windrank_core::windmodels::WindModelError;

use crate::csvio::TableError;
use crate::nasa::FetchError;

#[derive(Debug, thiserror::Error)]
pub enum WindrankError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Fetch(#[from] FetchError),
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Scale(#[from] ScaleError),
    #[error(transparent)]
    Relief(#[from] ReliefError),
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Train(#[from] TrainError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    WindModel(#[from] WindModelError),
    #[error("{path}: {detail}")]
    BadFile { path: PathBuf, detail: String },
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Usage(String),
}

impl WindrankError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        WindrankError::Io { path: path.into(), source }
    }

    /// Process exit code: 1 for domain errors (the inputs were readable
    /// but the computation is not defined for them), 2 for usage and IO
    /// errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            WindrankError::Io { .. }
            | WindrankError::Fetch(_)
            | WindrankError::BadFile { .. }
            | WindrankError::Usage(_) => 2,
            WindrankError::Table(e) => e.exit_code(),
            _ => 1,
        }
    }
}
