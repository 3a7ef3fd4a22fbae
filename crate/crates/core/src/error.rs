use std::io;

/// Errors produced by the d-tournament library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("rank {rank} out of range for C({n}, {k}) = {count}")]
    Range { rank: u64, k: usize, n: usize, count: u64 },

    #[error("size limit exceeded: {0}")]
    Size(String),

    #[error("degenerate configuration: zero orientation determinant on subset {subset:?}")]
    Degenerate { subset: Vec<u32> },

    #[error("enumeration budget exceeded: {required} simplex evaluations needed, budget is {budget}; use sampling instead")]
    Budget { required: u128, budget: u128 },

    #[error("format error: {0}")]
    Format(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
