use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("elements belong to different model alphabets: {0}")]
    AlphabetMismatch(String),
    #[error("invalid semigroup element: {0}")]
    InvalidElement(String),
    #[error("invalid model parameters: {0}")]
    InvalidModel(String),
    #[error("{what} cap exceeded: requested {requested}, cap {cap}")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },
    #[error("dimension budget exceeded: operator needs dimension {required}, budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("unknown quantity for this model: {0}")]
    UnknownQuantity(String),
    #[error("float kernel is ambiguous: smallest nonzero Ritz value {gap:.3e} is inside the rejection band ({lo:.0e}, {hi:.0e})")]
    AmbiguousFloatKernel { gap: f64, lo: f64, hi: f64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
