use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("the zero polynomial has no roots to isolate")]
    ZeroPolynomial,
    #[error("interval ({lo}, {hi}) does not isolate exactly one root of {poly}")]
    NotIsolating {
        poly: String,
        lo: String,
        hi: String,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("no primitive element found while merging number fields")]
    PrimitiveElement,
    #[error("coefficient tower depth {depth} exceeds the cap {cap}")]
    TowerDepthExceeded { depth: usize, cap: usize },
    #[error("order indeterminate ({0}); retry with a higher truncation order")]
    OrderIndeterminate(String),
    #[error("relation degenerates: {0}")]
    Degenerate(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
