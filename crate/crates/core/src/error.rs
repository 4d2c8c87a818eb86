use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: expected [{expected}], found [{found}]")]
    DegreeMismatch { expected: isize, found: isize },

    #[error("not a monotone map into [{tgt}]: {values:?}")]
    NotMonotone { tgt: usize, values: Vec<usize> },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cap too small: need at least {needed}, have {have}")]
    CapTooSmall { needed: isize, have: isize },

    #[error("cap mismatch: {0} vs {1}")]
    CapMismatch(isize, isize),

    #[error("unknown simplex `{id}` in degree {degree}")]
    UnknownSimplex { degree: isize, id: String },

    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),

    #[error("square does not commute at {0}")]
    NonCommutingSquare(String),

    #[error("invalid structure: {0}")]
    Invalid(String),

    #[error("axiom failure: {0}")]
    AxiomFailure(String),

    #[error("stabilisation not certified: {0}")]
    Inconclusive(String),

    #[error("level {degree} would hold {size} simplices, above the limit {limit}")]
    TooLarge {
        degree: isize,
        size: usize,
        limit: usize,
    },

    #[error("registry: {0}")]
    Registry(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
