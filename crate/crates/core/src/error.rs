use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("resource limit: {what} = {value} exceeds the configured bound {limit}")]
    ResourceLimit {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("out of range: {0}")]
    OutOfRange(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
