use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("closed form not applicable: {0}")]
    ClosedFormInapplicable(String),

    #[error("{what} = {value} exceeds the ceiling {limit}")]
    ResourceLimit {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn size(msg: impl Into<String>) -> Self {
        Error::SizeMismatch(msg.into())
    }
}
