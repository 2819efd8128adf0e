use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty sample")]
    EmptySample,
    #[error("invalid weighted sample: {0}")]
    InvalidSample(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("null effect: sample size undefined (p* = 1/2)")]
    NullEffect,
    #[error("allocation undetermined: both alternative variances are zero")]
    AllocationUndetermined,
    #[error("kappa undefined: both alternative variances are zero")]
    KappaUndefined,
    #[error("unknown example '{0}', valid names: seizures, nasal, kidney, albumin, beta55_32")]
    UnknownExample(String),
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
