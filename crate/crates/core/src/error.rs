use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("iteration {t} outside 1..={max}")]
    IterationRange { t: usize, max: usize },
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
    #[error("unknown benchmark `{0}`")]
    UnknownBenchmark(String),
    #[error("frequency {omega} rad/s outside coefficient grid [{lo}, {hi}]")]
    FrequencyOutOfRange { omega: f64, lo: f64, hi: f64 },
    #[error("simulation diverged at t = {t} s ({detail})")]
    Diverged { t: f64, detail: String },
    #[error("{path}: {message}")]
    Data { path: PathBuf, message: String },
    #[error("malformed input: {}", .0.join("; "))]
    Rows(Vec<String>),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
