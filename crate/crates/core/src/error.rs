use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("residue characteristic must be an odd prime, got {0}")]
    BadPrime(u64),
    #[error("zero argument: {0}")]
    Zero(&'static str),
    #[error("input is not a p-adic unit (valuation {0})")]
    NonUnit(String),
    #[error("element not expressible in this field: {0}")]
    NotExpressible(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("degree {0} exceeds the supported factorization bound")]
    DegreeTooLarge(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("missing site certificate for {0}")]
    MissingCertificate(String),
    #[error("inconsistent results: {0}")]
    Inconsistent(String),
    #[error("coprimality chain violated: {0}")]
    Coprimality(String),
}

pub type Result<T> = std::result::Result<T, Error>;
