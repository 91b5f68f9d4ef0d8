use thiserror::Error;

/// Errors raised by the library. Each variant maps onto one CLI exit code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("degree mismatch: {0}")]
    Degree(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("not basepoint-free: {0}")]
    NotBasepointFree(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("search bound exhausted after {words_tried} words (lengths 1..={max_length}): {detail}")]
    SearchExhausted {
        max_length: usize,
        words_tried: usize,
        detail: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Process exit codes shared by the CLI and the C ABI.
pub mod exit_code {
    pub const SUCCESS: i32 = 0;
    pub const INVALID_INPUT: i32 = 2;
    pub const VERIFICATION_FAILED: i32 = 3;
    pub const SEARCH_EXHAUSTED: i32 = 4;
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::VerificationFailed(_) => exit_code::VERIFICATION_FAILED,
            Error::SearchExhausted { .. } => exit_code::SEARCH_EXHAUSTED,
            _ => exit_code::INVALID_INPUT,
        }
    }
}

pub(crate) fn dim_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Dimension(msg.into()))
}
