use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("node {node} has no out-edges; the transition matrix needs every out-degree >= 1")]
    ZeroOutDegree { node: usize },

    #[error("node index {node} out of range for graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("tolerance must lie in (0, 1), got {0}")]
    InvalidTolerance(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("column {column} has absolute sum {sum}, exceeding 1; matrix is not (sub)stochastic")]
    NotStochastic { column: usize, sum: f64 },

    #[error("relaxation cap of {cap} steps reached before the residual certificate was met")]
    IterationCap { cap: usize },

    #[error("dense reference limited to {cap} nodes, graph has {n}")]
    OracleCap { n: usize, cap: usize },

    #[error("{}:{line}: {msg}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("internal consistency violation: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
