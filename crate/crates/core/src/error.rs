use alloc::string::String;

/// Errors raised by the algebraic and geometric routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid variable context: {0}")]
    InvalidContext(String),
    #[error("ring mismatch: expected {expected} variables, found {found}")]
    ContextMismatch { expected: usize, found: usize },
    #[error("weight vector has a negative entry at position {0}")]
    NegativeWeight(usize),
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
    #[error("degree of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("zero ideal basis")]
    ZeroIdealBasis,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("order is not I-specific")]
    NotIdealSpecific,
    #[error("dimension {dim} exceeds the fan enumeration limit of {limit}")]
    DimensionGuard { dim: usize, limit: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
