//! Growth ratios compose under `+_1`.
//!
//! For successive positive values `x_0, x_1, ..., x_n` with per-step ratios
//! `y_i = (x_{i+1} - x_i) / x_i`, the overall ratio `(x_n - x_0) / x_0` is the
//! left fold of the `y_i` under the deformed addition with `a = 1`, whatever
//! the values are.

use thiserror::Error;

use crate::deformed::DeformParam;
use crate::error::DomainError;
use crate::laws::scaled_error;
use crate::ops;

/// Tolerance for the composed and direct ratios to agree.
pub const RATIO_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RatioError {
    #[error("a ratio chain needs at least two values, got {0}")]
    TooShort(usize),
    #[error("value {index} is {value}; every value must be finite and > 0")]
    NonPositive { index: usize, value: f64 },
    #[error("composition failed: {0}")]
    Domain(#[from] DomainError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioChain {
    values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioReport {
    pub steps: Vec<f64>,
    pub composed: f64,
    pub direct: f64,
    pub error: f64,
}

impl RatioReport {
    pub fn pass(&self) -> bool {
        self.error <= RATIO_TOLERANCE
    }
}

impl RatioChain {
    pub fn new(values: Vec<f64>) -> Result<Self, RatioError> {
        if values.len() < 2 {
            return Err(RatioError::TooShort(values.len()));
        }
        if let Some((index, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v > 0.0))
        {
            return Err(RatioError::NonPositive { index, value });
        }
        Ok(RatioChain { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn steps(&self) -> Vec<f64> {
        self.values
            .windows(2)
            .map(|w| (w[1] - w[0]) / w[0])
            .collect()
    }

    /// Overall ratio computed from the endpoints.
    pub fn direct(&self) -> f64 {
        let (first, last) = (self.values[0], self.values[self.values.len() - 1]);
        (last - first) / first
    }

    /// Left fold of the step ratios under `+_1`, starting from its neutral element.
    pub fn composed(&self) -> Result<f64, RatioError> {
        let one = DeformParam::new(1.0).expect("a = 1");
        self.steps()
            .into_iter()
            .try_fold(0.0, |acc, y| ops::add(one, acc, y))
            .map_err(RatioError::from)
    }

    pub fn report(&self) -> Result<RatioReport, RatioError> {
        let composed = self.composed()?;
        let direct = self.direct();
        Ok(RatioReport {
            steps: self.steps(),
            composed,
            direct,
            error: scaled_error(composed, direct),
        })
    }
}
