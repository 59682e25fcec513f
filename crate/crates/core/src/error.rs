use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An exhaustive scan over `q^n` words would exceed the configured cap.
    #[error("exhaustive scan of {size} words exceeds guard {guard}")]
    GuardExceeded { size: u128, guard: u128 },

    #[error("no closed form applies: {0}")]
    NotApplicable(String),

    #[error("arithmetic overflow while evaluating {0}")]
    Overflow(&'static str),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
