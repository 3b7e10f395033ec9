use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root order {0}: expected l >= 3")]
    InvalidOrder(i64),
    #[error("root order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("presentation mismatch: {0}")]
    PresentationMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("torsion: {0}")]
    Torsion(String),
    #[error("no eigenvector found over the cyclotomic field; supply hints ({0})")]
    NeedsHints(String),
    #[error("module is not simple: {0}")]
    NotSimple(String),
    #[error("resource guard exceeded: {0}")]
    Resource(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("relation check failed: {0}")]
    RelationFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
