use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("word {0} is not fully commutative")]
    NotFcWord(String),

    #[error("basis word length limit {limit} exceeded")]
    LengthLimitExceeded { limit: usize },

    #[error("rank mismatch: {0}")]
    RankMismatch(String),

    #[error("expected {expected} graph, found {found}")]
    WrongGraphKind { expected: &'static str, found: String },

    #[error("basis word {0} belongs to no orbit family")]
    NotClassifiable(String),

    #[error("singular linear equation for depth {k}")]
    SingularSystem { k: usize },

    #[error("missing trace parameter: {0}")]
    MissingParameter(String),

    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse { position, message: message.into() }
    }
}
