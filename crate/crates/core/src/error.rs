use thiserror::Error;

use crate::numerics::Cx;

pub type Result<T, E = HeunError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum HeunError {
    /// Argument outside the function's domain (zero divisor, singular point, cap exceeded).
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative procedure did not reach its tolerance. Carries the best estimate, if any.
    #[error("no convergence: {what}")]
    Convergence { what: String, best: Option<Cx> },

    /// The recurrence factor in front of coefficient `index` vanishes.
    #[error("resonant parameters: recurrence factor vanishes at index {index}")]
    Resonance { index: usize },

    /// A parameter tie required by a formula does not hold.
    #[error("constraint violated: {constraint} ({detail})")]
    Constraint { constraint: String, detail: String },

    /// An identity instance could not be built.
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl HeunError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        HeunError::Domain(msg.into())
    }

    pub(crate) fn convergence(what: impl Into<String>, best: Option<Cx>) -> Self {
        HeunError::Convergence { what: what.into(), best }
    }

    pub(crate) fn constraint(constraint: impl Into<String>, detail: impl Into<String>) -> Self {
        HeunError::Constraint { constraint: constraint.into(), detail: detail.into() }
    }
}
