use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unknown variety `{0}`")]
    UnknownVariety(String),

    #[error("degree {degree} exceeds the configured bound {bound}")]
    DegreeBound { degree: usize, bound: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("element is not multilinear of degree {degree}: {detail}")]
    NotMultilinear { degree: usize, detail: String },

    #[error("element is not polyhomogeneous: {0}")]
    NotHomogeneous(String),

    #[error("generator x{0} has no assigned value")]
    Unassigned(u32),

    #[error("invalid theta element: {0}")]
    InvalidTheta(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
