use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid ring parameter: {0}")]
    InvalidParameter(String),
    #[error("element does not belong to {0}")]
    RingMismatch(String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("divisor must have a unit leading coefficient")]
    NonMonicDivisor,
    #[error("polynomial must be monic: {0}")]
    NonMonic(String),
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("factors are not pairwise coprime modulo p")]
    NotCoprime,
    #[error("coefficient is not divisible by p")]
    NotDivisibleByP,
    #[error("invalid ambient: {0}")]
    InvalidAmbient(String),
    #[error("ambient is not a principal ideal ring: {0}")]
    NotPrincipal(String),
    #[error("repeated roots in semisimple position {0}")]
    RepeatedRoot(usize),
    #[error("code parameters out of bounds: {0}")]
    ParamsOutOfBounds(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded { what: &'static str, needed: String, cap: String },
    #[error("linear system has no solution")]
    Inconsistent,
    #[error("code is not self-orthogonal")]
    NotSelfOrthogonal,
    #[error("certification failed: {0}")]
    Certification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
