//! Error types shared across the engine.

use thiserror::Error;

/// A reason why a candidate matrix fails to present a parameter module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParameterViolation {
    #[error("expected {expected} columns (d + r - 1), got {got}")]
    WrongColumnCount { expected: usize, got: usize },
    #[error("column {col} is not a homogeneous vector")]
    NonHomogeneousColumn { col: usize },
    #[error("entry ({row}, {col}) has a nonzero constant part, so the column does not lie in mF")]
    NotInMaximalIdeal { row: usize, col: usize },
    #[error("F/N does not have finite length")]
    InfiniteColength,
    #[error("columns are not minimal generators: mu = {mu}, expected {expected}")]
    NotMinimal { mu: usize, expected: usize },
    #[error("the base ring has dimension 0; parameter modules require d > 0")]
    ZeroDimensionalRing,
}

/// Engine-level failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("non-homogeneous input: {what}")]
    NonHomogeneous { what: String },
    #[error("quotient has infinite length where a finite length was required")]
    InfiniteLength,
    #[error("free resolution budget of {budget} steps exceeded")]
    ResolutionBudget { budget: usize },
    #[error("not a parameter module: {0}")]
    Validation(#[from] ParameterViolation),
    #[error("multiplicity cross-check failed: chi = {chi}, fitted e0 = {e0}")]
    MultiplicitiesDisagree { chi: i64, e0: String },
    #[error("polynomial fit inconclusive at nu_max = {nu_max}; raise the table budget")]
    FitInconclusive { nu_max: u32 },
    #[error("internal error: {0}")]
    Internal(String),
}
