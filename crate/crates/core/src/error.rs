use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field order {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} outside supported range 2..=65536")]
    OrderOutOfRange(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields (q={0} vs q={1})")]
    MixedFields(u32, u32),
    #[error("element {rep} out of range for F_{q}")]
    ElementOutOfRange { rep: u64, q: u32 },
    #[error("operation requires {expected} characteristic, field has p={p}")]
    WrongCharacteristic { expected: &'static str, p: u32 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),
    #[error("bound not satisfied: C(m+n-1,n)*|S| = {constraints} is not < N_q(n,m) = {unknowns}")]
    BoundNotSatisfied { constraints: u64, unknowns: u64 },
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("unsupported instance: {0}")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("malformed data: {0}")]
    Data(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
