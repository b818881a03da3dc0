use thiserror::Error;

/// Errors raised by constructions, checks and the verifier.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("unknown proposition or claim id `{0}`")]
    UnknownId(String),
    #[error("`{id}` is out of scope at finite scale: {reason}")]
    OutOfScope { id: String, reason: String },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    /// The message without the kind prefix of `Display`.
    pub fn message(&self) -> String {
        match self {
            Error::Input(m) | Error::Resource(m) => m.clone(),
            Error::UnknownId(id) => format!("unknown proposition or claim id `{id}`"),
            Error::OutOfScope { id, reason } => format!("`{id}` is out of scope at finite scale: {reason}"),
        }
    }

    /// Stable machine-readable code, used on the CLI diagnostic stream.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Input(_) => "input",
            Error::Resource(_) => "resource",
            Error::UnknownId(_) => "unknown-id",
            Error::OutOfScope { .. } => "out-of-scope",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
