use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
    #[error("containment violation: {0}")]
    ContainmentViolation(String),
    #[error("not a chain complex: d(n-1)*d(n) != 0 at degree {degree}")]
    NotAComplex { degree: i64 },
    #[error("not a chain map: square fails at degree {degree}")]
    NotAChainMap { degree: i64 },
    #[error("index overflow: {0}")]
    IndexOverflow(String),
    #[error("exactness violation: {0}")]
    ExactnessViolation(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("window violation: {0}")]
    WindowViolation(String),
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("validation error in '{object}': {message}")]
    Validation { object: String, message: String },
    #[error("unknown command '{0}'")]
    UnknownCommand(String),
    #[error("missing argument: {0}")]
    MissingArgument(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
