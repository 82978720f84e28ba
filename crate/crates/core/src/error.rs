use num_bigint::{BigInt, BigUint};
use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input is outside the domain of the operation, or a hypothesis
    /// (coprimality, nonzero discriminant, distinct roots) is violated.
    #[error("domain error: {0}")]
    Domain(String),
    /// The fiber at `n` is singular.
    #[error("bad fiber at n = {n}: discriminant D(n) = 0")]
    BadFiber { n: BigInt },
    #[error("factoring effort cap exceeded on {value} after {iterations} rho iterations")]
    FactorCap { value: BigUint, iterations: u64 },
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("usage error: {0}")]
    Usage(String),
    #[error("checkpoint rejected: {0}")]
    Checkpoint(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit code used by the command line front end:
    /// 1 usage, 2 domain rejection, 3 internal or effort-cap failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Parse { .. } | Error::Checkpoint(_) => 1,
            Error::Domain(_) | Error::BadFiber { .. } => 2,
            Error::FactorCap { .. } | Error::Io(_) | Error::Internal(_) => 3,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
