use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid {field}: {reason}")]
    Invalid { field: &'static str, reason: String },

    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("character does not apply to this element: {0}")]
    Mismatch(String),

    #[error("character has no exact value; evaluate with a precision instead")]
    Inexact,

    #[error("tail bound does not reach precision {precision} within {budget} terms")]
    PrecisionBudget { precision: String, budget: u64 },

    #[error("indistinguishable below bound {0}")]
    Indistinguishable(u64),

    #[error("points are equal")]
    EqualPoints,

    #[error("character is not a member of the generating family")]
    NotInFamily,

    #[error("sequence schema violated at n = {n}: {reason}")]
    SchemaViolation { n: u64, reason: String },

    #[error("prefix exhausted: only {0} explicit terms")]
    PrefixExhausted(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("enumeration budget exceeded: {size} > {budget}")]
    BudgetExceeded { size: u64, budget: u64 },

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Invalid { field, reason: reason.into() }
    }
}
