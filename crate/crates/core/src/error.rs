use thiserror::Error;

/// Errors raised by solvers, generators and the serialization layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An enumeration would exceed a configured size cap.
    #[error("{what} = {actual} exceeds the configured cap of {cap}")]
    Size {
        what: &'static str,
        actual: usize,
        cap: usize,
    },

    /// Query parameters that cannot describe a feasible instance.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Input lacks the structure an algorithm or reduction requires.
    #[error("structure violation: {0}")]
    Structure(String),

    /// Algorithm invoked with an unsupported scoring rule or option.
    #[error("usage error: {0}")]
    Usage(String),

    /// Malformed document; `location` names a line/column or a field path.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
