use thiserror::Error;

/// Errors raised by the library.
///
/// The CLI maps every variant to exit code 2; check failures are not errors.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Mismatched shapes or graph parameters.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// An input outside the domain of the operation (vector not in subspace,
    /// empty set, subspace outside the embedding domain, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A precondition of a test predicate was violated.
    #[error("precondition error: {0}")]
    Precondition(String),

    /// An exhaustive computation would exceed the configured cap.
    #[error("resource error: {what} needs {count} items, cap is {cap}")]
    Resource {
        what: String,
        count: String,
        cap: u64,
    },

    /// Malformed text input.
    #[error("format error at line {line}: {message}")]
    Format { line: usize, message: String },
}

impl Error {
    pub(crate) fn resource(what: impl Into<String>, count: impl ToString, cap: u64) -> Self {
        Error::Resource {
            what: what.into(),
            count: count.to_string(),
            cap,
        }
    }

    pub(crate) fn format(line: usize, message: impl Into<String>) -> Self {
        Error::Format {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
