use thiserror::Error;

/// Errors raised by the algebra, code and analysis layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("no registered tower chain from {from} to {to}")]
    NotInTower { from: String, to: String },
    #[error("gcrd of two zero polynomials")]
    BothZero,
    #[error("lclm with a zero operand")]
    ZeroOperand,
    #[error("(f,t)_r != 1: f has zero constant term")]
    NotCoprimeWithT,
    #[error("operation requires delta = 0")]
    DeltaUnsupported,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("coefficient lies outside the maximal subfield E")]
    NotInE,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("expected {expected} coefficients, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("matrix emission unsupported for s>1 (s = {s})")]
    SNotOne { s: usize },
    #[error("degree {degree} exceeds the allowed maximum {max}")]
    DegreeTooHigh { degree: usize, max: usize },
    #[error("degree out of range: {0}")]
    DegreeOutOfRange(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("budget exceeded after {visited} of {total} items")]
    BudgetExceeded { visited: u128, total: u128 },
    #[error("exhaustive scan requires a finite field F'")]
    InfiniteField,
    #[error("the code is zero-dimensional")]
    EmptyCode,
    #[error("invalid construction: {0}")]
    InvalidConstruction(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("engine disagreement: {0}")]
    EngineDisagreement(String),
}

pub type Result<T> = std::result::Result<T, Error>;
