use thiserror::Error;

/// Errors raised by graph construction, kernel algebra, density evaluation and the cone tests.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid glue spec: {0}")]
    InvalidGlue(String),
    #[error("invalid kernel: {0}")]
    InvalidKernel(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("kernels live on different block measures")]
    MeasureMismatch,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{what} exceeds the cap of {cap} (got {got})")]
    CapExceeded {
        what: &'static str,
        cap: u64,
        got: u64,
    },
    #[error("rooted density kernel is not symmetric at blocks ({0}, {1})")]
    AsymmetricRootedKernel(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("eigenvalue iteration did not converge after {0} sweeps")]
    NoConvergence(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
