use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("unknown field `{0}` (expected Q or F<p>)")]
    UnknownField(String),
    #[error("malformed scalar literal `{0}`")]
    Literal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("duplicate basis element `{0}`")]
    DuplicateBasis(String),
    #[error("unknown basis element `{0}`")]
    UnknownBasis(String),
    #[error("map degree mismatch: {0}")]
    Degree(String),
    #[error("incompatible spaces: {0}")]
    Mismatch(String),
    #[error("differential does not square to zero at `{0}`")]
    NotAComplex(String),
    #[error("coalgebra is not connected: {0}")]
    NotConnected(String),
    #[error("coalgebra is not 1-connected; {0}")]
    NotSimplyConnected(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
