use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input text could not be parsed. `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A token that is not a generator of the presentation's alphabet.
    #[error("unknown generator token `{token}`")]
    UnknownToken { token: String },

    /// An operation was called on input that violates its precondition.
    #[error("{0}")]
    Precondition(String),

    /// A size guard refused an enumeration that would be too large.
    #[error("{0}")]
    Guard(String),

    /// Malformed command-line input or an unreadable file.
    #[error("{0}")]
    Usage(String),
}

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Error {
        Error::Parse { line, message: message.into() }
    }

    pub fn precondition(message: impl Into<String>) -> Error {
        Error::Precondition(message.into())
    }

    pub fn usage(message: impl Into<String>) -> Error {
        Error::Usage(message.into())
    }
}
