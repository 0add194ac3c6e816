use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("configuration error: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("generator {index} is not a monomial")]
    NotMonomial { index: usize },
    #[error("marked term of generator {index} is not its leading term")]
    BadMark { index: usize },
    #[error("Groebner check failed in degree {degree}: {standard} standard monomials but dim (P/I) = {quotient}")]
    NotGroebner { degree: usize, standard: usize, quotient: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("structure check failed: {0}")]
    Structure(String),
    #[error("map is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("resolution too short: need length {needed}, have {available}")]
    ResolutionTooShort { needed: usize, available: usize },
    #[error("index {index} outside the computed range {lo}..={hi}")]
    OutOfRange { index: i64, lo: i64, hi: i64 },
    #[error("unknown module preset {0:?}")]
    UnknownPreset(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("unsupported characteristic {0}")]
    Characteristic(u64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
