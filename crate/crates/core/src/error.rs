//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },
    #[error("{p} is not prime (or exceeds the supported 2^31 bound)")]
    NotPrime { p: u64 },
    #[error("invalid defining modulus: {0}")]
    InvalidModulus(String),
    #[error("no primitive {e}-th root of unity is available: {reason}")]
    NoPrimitiveRoot { e: u64, reason: String },
    #[error("unsupported over the rationals: {0}")]
    UnsupportedOverRationals(&'static str),
    #[error("Kummer index {index} is wild in characteristic {p}")]
    WildKummerIndex { index: u32, p: u64 },
    #[error("index {from} does not divide {to}")]
    IndexNotMultiple { from: u32, to: u32 },
    #[error("the zero element has no {0}")]
    ZeroInput(&'static str),
    #[error("zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),
    #[error("place does not lie above the given place")]
    NotAbove,
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("input has degree 0 in X{var}")]
    DegreeZeroInVariable { var: usize },
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unknown variable X{var} at {line}:{col} (ambient dimension is {nvars})")]
    UnknownVariable {
        var: usize,
        line: usize,
        col: usize,
        nvars: usize,
    },
    #[error("coefficient not in the field at {line}:{col}: {msg}")]
    CoefficientNotInField { line: usize, col: usize, msg: String },
    #[error("point is not on the variety: value {value}")]
    NotOnVariety { value: String },
    #[error("polynomial is not reduced: {0}")]
    NotReduced(String),
    #[error("invalid twist exponent M = {m}: {reason}")]
    InvalidM { m: u64, reason: String },
    #[error("enumeration budget exceeded: {required} points needed, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("report error: {0}")]
    Json(#[from] serde_json::Error),
}
