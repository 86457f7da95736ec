use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("denominator {0} is not invertible modulo {1}")]
    NotInvertible(String, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field does not have characteristic 2")]
    NotCharacteristicTwo,
    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("subspace is not contained in the ambient subspace")]
    NotContained,
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("subspace is not closed under the bracket")]
    NotSubalgebra,
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("element is not central")]
    NotCentral,
    #[error("identified central elements are linearly dependent")]
    DependentIdentification,
    #[error("nilpotency class {class} exceeds the free algebra class {bound}")]
    ClassTooLarge { class: usize, bound: usize },
    #[error("free nilpotent algebra of dimension {dim} exceeds the limit {limit}")]
    ResourceLimit { dim: usize, limit: usize },
    #[error("free algebra needs at least one generator and class at least one")]
    EmptyFreeAlgebra,
    #[error("generator images do not generate the algebra")]
    NotGenerating,
    #[error("bracket index ({0}, {1}) is invalid")]
    InvalidIndex(usize, usize),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("characteristic constraint violated: {0}")]
    Characteristic(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("rejection budget exhausted after {0} samples")]
    RejectionBudget(usize),
    #[error("malformed algebra file: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
