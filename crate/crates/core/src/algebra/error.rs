use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("too many variables ({0}); at most 8 supported")]
    TooManyVariables(usize),
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error("ring has no weights")]
    NoWeights,
    #[error("division by zero")]
    DivisionByZero,
    #[error("not divisible: obstructing term {0}")]
    NotDivisible(String),
    #[error("denominator basis mismatch")]
    BasisMismatch,
    #[error("element is not invertible in the localized ring: {0}")]
    NotInvertible(String),
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
}
