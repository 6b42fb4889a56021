use std::fmt;

use thiserror::Error;

/// Why a partial deformed operation has no finite real value.
///
/// The same five tags are used by every operator, so callers (the expression
/// evaluator, the CLI) can map them uniformly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Error)]
pub enum DomainError {
    /// `1 + a x <= 0` inside a deformed exponential or a dual operator.
    #[error("non-positive bracket 1 + a*x")]
    NonPositiveBracket,
    /// A logarithm-like argument (or a positive-domain operand) is `<= 0`.
    #[error("non-positive argument")]
    NonPositiveArgument,
    /// The result magnitude exceeds the `f64` range.
    #[error("overflow")]
    Overflow,
    /// `1 + a y = 0`: the point `-1/a` has no opposite element.
    #[error("singular denominator")]
    SingularDenominator,
    /// The base of a `(...)^(1/a)` power is `<= 0`.
    #[error("non-positive base")]
    NonPositiveBase,
}

impl DomainError {
    /// Stable identifier, used in CSV status columns and reports.
    pub fn name(self) -> &'static str {
        match self {
            DomainError::NonPositiveBracket => "NonPositiveBracket",
            DomainError::NonPositiveArgument => "NonPositiveArgument",
            DomainError::Overflow => "Overflow",
            DomainError::SingularDenominator => "SingularDenominator",
            DomainError::NonPositiveBase => "NonPositiveBase",
        }
    }
}

/// Outcome of a partial deformed operation: a finite value or a domain violation.
pub type Checked = Result<f64, DomainError>;

/// Rejects a non-finite intermediate as an overflow.
#[inline]
pub(crate) fn finite(v: f64) -> Checked {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(DomainError::Overflow)
    }
}

/// Invalid construction of a [`crate::DeformParam`].
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ParamError {
    #[error("deformation parameter must be finite, got {0}")]
    NonFiniteA(f64),
    #[error("epsilon limit must be finite and > 0, got {0}")]
    BadEpsilon(f64),
}

/// Half-open byte range into the source text of an expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    /// Smallest span covering both.
    pub fn join(self, other: Span) -> Span {
        Span {
            start: self.start.min(other.start),
            end: self.end.max(other.end),
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}
