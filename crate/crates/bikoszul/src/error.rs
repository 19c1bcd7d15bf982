use thiserror::Error;

/// Errors surfaced by the exact linear algebra layer and everything built on it.
///
/// `ComplexError`, `InvariantViolation` and `LiftError` signal wiring bugs in
/// upstream constructions (CLI exit code 1); the remaining variants are input
/// or budget problems (exit code 2).
#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor a prime")]
    NotPrime(u64),
    #[error("mixed-field input: {0}")]
    MixedField(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("duplicate entry at ({0}, {1})")]
    DuplicateEntry(usize, usize),
    #[error("entry out of bounds at ({0}, {1})")]
    EntryOutOfBounds(usize, usize),
    #[error("complex error: composite differential is nonzero ({0})")]
    ComplexError(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("lift error: {0}")]
    LiftError(String),
    #[error("enumeration budget exceeded: would visit {need} field elements, budget {budget}")]
    BudgetExceeded { need: u128, budget: u64 },
    #[error("argument out of range: {0}")]
    RangeError(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// CLI exit code classification: 1 for internal invariant violations,
    /// 2 for invalid input/parameters.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ComplexError(_) | Error::InvariantViolation(_) | Error::LiftError(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
