use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the solver, census and sweep layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("sieve limit {limit} outside supported range [2, {max}]")]
    Capacity { limit: u64, max: u64 },

    #[error("{value} is beyond the sieve limit {limit}")]
    OutOfSieveRange { value: u64, limit: u64 },

    #[error("N must be at least 1")]
    ZeroInput,

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("{baskets} baskets cannot hold {n_input} pears with distinct counts")]
    Infeasible { baskets: u64, n_input: u64 },

    #[error("invariant violated: {0}")]
    Invariant(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} {value} exceeds the supported maximum {max}")]
    TooLarge {
        what: &'static str,
        value: u64,
        max: u64,
    },

    #[error("no sweep records to emit")]
    EmptyRecords,

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
