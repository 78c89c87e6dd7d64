use std::io;

use thiserror::Error;

/// Failures surfaced by the command-line front end and the scan engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] repfn_core::Error),
    #[error("scan of m up to {requested} exceeds the budget of {budget} for {family} profiles")]
    Budget { requested: usize, budget: usize, family: &'static str },
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn io(path: impl Into<String>, source: io::Error) -> Error {
        Error::Io { path: path.into(), source }
    }

    /// 2 for bad input, 3 for capacity and budget limits.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Budget { .. } | Error::Core(repfn_core::Error::Capacity { .. }) => 3,
            Error::Core(repfn_core::Error::EnumerationGuard { .. }) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
