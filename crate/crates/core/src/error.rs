use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("resource cap exceeded: {what} (limit {limit})")]
    CapExceeded { what: &'static str, limit: usize },

    #[error(transparent)]
    Sts(#[from] crate::sts::StsError),
}

impl Error {
    pub(crate) fn cap(what: &'static str, limit: usize) -> Self {
        Error::CapExceeded { what, limit }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
