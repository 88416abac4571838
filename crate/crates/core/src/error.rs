use thiserror::Error;

use crate::verdict::Exact;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic must be an odd prime, got {0}")]
    CompositeP(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus {0:?} is reducible over the prime field")]
    ReducibleModulus(Vec<u32>),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field of order {q} exceeds the supported maximum {max}")]
    FieldTooLarge { q: u64, max: u64 },
    #[error("invalid field element: {0}")]
    InvalidElement(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("zero vector has no direction")]
    ZeroVector,
    #[error("zero normal does not define a hyperplane")]
    ZeroNormal,
    #[error("plane normal has zero norm")]
    DegeneratePlane,
    #[error("plane normal is not in the canonical direction set (norm must be 1 or gamma)")]
    NonCanonicalNormal,
    #[error("expected a vector of dimension {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("enumeration needs {required} candidates, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("point set or plane set is empty")]
    EmptySet,
    #[error("requested {requested} elements but only {available} exist")]
    TooLarge { requested: usize, available: usize },
    #[error("exact check `{check}` failed: lhs = {lhs}, rhs = {rhs}")]
    IdentityViolation {
        check: String,
        lhs: Exact,
        rhs: Exact,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
