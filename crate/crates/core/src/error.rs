use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// The CLI maps these onto exit codes through [`Error::exit_code`]: input and
/// validation problems exit with 2, failed internal identities with 3.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("char 2 unsupported")]
    CharTwoUnsupported,
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Validation(String),
    #[error("enumeration budget exceeded: about {estimated} elements, budget {budget}")]
    BudgetExceeded { estimated: u128, budget: u128 },
    #[error("variable mismatch: {0}")]
    VariableMismatch(String),
    #[error("mixed-modulus factor: exact orbit summation unavailable ({0})")]
    MixedModulus(String),
    #[error("internal identity failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::MixedModulus(_) | Error::Internal(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
