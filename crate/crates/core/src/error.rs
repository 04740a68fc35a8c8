use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} values, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{0} is not a usable prime modulus")]
    NotPrime(u64),
    #[error("degenerate model `{0}`: parametrization vanished at every probe")]
    DegenerateModel(String),
    #[error("model `{0}` has no parametrization")]
    NoParametrization(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("no lines detected through the base point at any prime")]
    NoLinesDetected,
    #[error("enumeration budget exceeded: {points} points requested, limit {limit}")]
    BudgetExceeded { points: u128, limit: u128 },
    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),
}
