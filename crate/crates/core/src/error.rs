use thiserror::Error;

use crate::group::Interval;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CactusError {
    #[error("strand count must satisfy 2 <= n <= {max}, got {n}")]
    InvalidContext { n: usize, max: usize },

    #[error("invalid interval [{p},{q}] for n = {n}")]
    InvalidInterval { p: usize, q: usize, n: usize },

    #[error("words live in different groups (n = {left} vs n = {right})")]
    ContextMismatch { left: usize, right: usize },

    #[error("interval {inner} is not nested in {outer}")]
    NotNested { outer: Interval, inner: Interval },

    #[error("closure exceeded its budget of {budget} members")]
    BudgetExceeded { budget: usize },

    #[error("resource cap exceeded: {what} ({limit})")]
    ResourceLimit { what: &'static str, limit: usize },

    #[error("margin violation: {0}")]
    MarginViolation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = CactusError> = std::result::Result<T, E>;
