use thiserror::Error;

/// Errors raised by the quantum-walk toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid modulus {0}")]
    InvalidModulus(u32),
    #[error("enumeration of {requested} elements exceeds the cap of {cap}")]
    CapExceeded { requested: u128, cap: u128 },
    #[error("the zero module has no minimum distance")]
    ZeroModule,
    #[error("no unit pivot available: submodule is not free with a systematic form over Z_{0}")]
    NoUnitPivot(u32),
    #[error("minimum distance {0} is below three; the quotient graph is not simple")]
    DistanceTooSmall(usize),
    #[error("weight enumerator transform produced a non-integral count")]
    NonIntegralCount,
    #[error("matrix of order {n} exceeds the dense cap of {cap}")]
    MatrixTooLarge { n: usize, cap: usize },
    #[error("matrix is not a symmetric 0/1 matrix")]
    NotSymmetric,
    #[error("connection set is not linear")]
    NotLinear,
    #[error("eigenvalues are not integers")]
    NonIntegerEigenvalues,
    #[error("eigenvalue differences are not divisible by q = {0}")]
    NonIntegralExponent(u32),
    #[error("weight {0} is below three")]
    WeightTooSmall(usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
