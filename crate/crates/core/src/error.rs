use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("modulus must be odd and greater than 1")]
    InvalidModulus,

    #[error("base and modulus are not coprime")]
    NotCoprime,

    #[error("modulus is not prime")]
    NotPrime,

    #[error("factorization budget of {budget} iterations exceeded")]
    FactorizationBudget { budget: u64 },

    #[error("step budget of {budget} exceeded")]
    StepBudget { budget: u64 },

    #[error("invalid register spec: {0}")]
    InvalidSpec(String),

    #[error("invalid register state: {0}")]
    InvalidState(String),

    #[error("need at least {needed} bits, got {got}")]
    InsufficientBits { needed: usize, got: usize },

    #[error("operation not supported for {0}")]
    UnsupportedMode(&'static str),

    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),

    #[error("search budget exhausted after {tried} candidates without a hit")]
    SearchExhausted { tried: u64 },

    #[error("input is empty")]
    EmptyInput,

    #[error("parse error: {0}")]
    Parse(String),
}
