use thiserror::Error;

/// Errors shared by every module of the crate.
///
/// The three families map onto the command-line exit codes: validation
/// and domain problems exit with 1, resource refusals with 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Validation(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{what} exceeds the configured bound of {bound} ({hint})")]
    BoundExceeded {
        what: String,
        bound: String,
        hint: String,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn bound(what: impl Into<String>, bound: impl ToString, hint: impl Into<String>) -> Self {
        Error::BoundExceeded {
            what: what.into(),
            bound: bound.to_string(),
            hint: hint.into(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BoundExceeded { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
