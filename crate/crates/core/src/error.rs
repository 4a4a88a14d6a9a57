use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field F_{p}^{degree} is too large for the packed representation")]
    FieldTooLarge { p: u32, degree: usize },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("invalid connection: {0}")]
    InvalidConnection(String),
    #[error("invalid parabolic module: {0}")]
    InvalidParabolic(String),
    #[error("invalid spectral module: {0}")]
    InvalidSpectral(String),
    #[error("witt vector mismatch: {0}")]
    WittMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("splitting field of degree {degree} exceeds the cap {cap} (polynomial {poly})")]
    SplittingCap { degree: usize, cap: usize, poly: String },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
