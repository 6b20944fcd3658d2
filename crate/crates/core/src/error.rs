use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A bit stream could not be decoded. `offset` is the bit position
    /// (0-based, relative to the start of the stream) where decoding failed.
    #[error("decode error at bit {offset}: {reason}")]
    Decode { offset: usize, reason: String },

    /// A brute-force computation was requested beyond its feasibility guard.
    #[error("infeasible: length {n} exceeds the enumeration limit {limit}")]
    Infeasible { n: usize, limit: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
