//! Crate-wide error type.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug)]
pub enum Error {
    /// A caller-supplied argument violated a precondition.
    Argument(String),
    /// A problem evaluator produced an inconsistent or non-finite result.
    Evaluation { problem: String, message: String },
    /// A text input (front file, trace CSV, target file) failed to parse.
    Parse {
        source_name: String,
        line: usize,
        message: String,
    },
    /// A file or stream had the wrong overall structure.
    Format(String),
    Io(std::io::Error),
}

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn parse(source_name: impl Into<String>, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            source_name: source_name.into(),
            line,
            message: msg.into(),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Argument(msg) => write!(f, "invalid argument: {msg}"),
            Error::Evaluation { problem, message } => {
                write!(f, "evaluation failed on problem '{problem}': {message}")
            }
            Error::Parse {
                source_name,
                line,
                message,
            } => write!(f, "{source_name}:{line}: {message}"),
            Error::Format(msg) => write!(f, "format error: {msg}"),
            Error::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}
