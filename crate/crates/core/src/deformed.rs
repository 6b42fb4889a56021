//! The deformed exponential and logarithm.
//!
//! With a real deformation parameter `a`:
//!
//! ```text
//! exp_a(x) = (1 + a x)^(1/a)        defined on D_a = { x : 1 + a x > 0 }
//! ln_a(x)  = (x^a - 1) / a          defined for x > 0
//! ```
//!
//! Both reduce to the classical `exp`/`ln` at `a = 0`, which is handled as an
//! exact special case. For `a != 0` the functions are evaluated in log space,
//! `exp(ln_1p(a x) / a)` and `expm1(a ln x) / a`, which stays accurate as
//! `a -> 0` and never forms `1 + a x` explicitly.

use crate::error::{finite, Checked, DomainError, ParamError};

/// Default threshold below which `|a|` is considered near-classical.
pub const DEFAULT_EPSILON_LIMIT: f64 = 1e-8;

/// The deformation parameter `a`.
///
/// `a == 0.0` exactly selects the classical operators; `0 < |a| <= epsilon_limit`
/// routes the operators that have a dedicated small-`a` form through it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformParam {
    a: f64,
    epsilon_limit: f64,
}

impl DeformParam {
    pub fn new(a: f64) -> Result<Self, ParamError> {
        Self::with_epsilon(a, DEFAULT_EPSILON_LIMIT)
    }

    pub fn with_epsilon(a: f64, epsilon_limit: f64) -> Result<Self, ParamError> {
        if !a.is_finite() {
            return Err(ParamError::NonFiniteA(a));
        }
        if !(epsilon_limit.is_finite() && epsilon_limit > 0.0) {
            return Err(ParamError::BadEpsilon(epsilon_limit));
        }
        Ok(DeformParam { a, epsilon_limit })
    }

    /// The classical algebra, `a = 0`.
    pub fn classical() -> Self {
        DeformParam {
            a: 0.0,
            epsilon_limit: DEFAULT_EPSILON_LIMIT,
        }
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn epsilon_limit(&self) -> f64 {
        self.epsilon_limit
    }

    /// Same epsilon limit, different `a`.
    pub fn with_a(&self, a: f64) -> Result<Self, ParamError> {
        Self::with_epsilon(a, self.epsilon_limit)
    }

    #[inline]
    pub fn is_classical(&self) -> bool {
        self.a == 0.0
    }

    /// `0 < |a| <= epsilon_limit`.
    #[inline]
    pub fn is_near_classical(&self) -> bool {
        self.a != 0.0 && self.a.abs() <= self.epsilon_limit
    }
}

/// What the deformed exponential returns outside its domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EvalPolicy {
    /// Non-positive brackets are domain errors.
    #[default]
    Strict,
    /// A non-positive bracket with a positive exponent `1/a` evaluates to 0
    /// (the usual cutoff convention). All other violations remain errors.
    Cutoff,
}

/// `x^a - 1` for `x > 0`, accurate when `x^a` is close to 1.
///
/// `x = 0` is accepted for `a > 0` and gives exactly `-1`.
#[inline]
pub(crate) fn pow_m1(x: f64, a: f64) -> f64 {
    if x == 0.0 {
        if a > 0.0 {
            -1.0
        } else {
            f64::INFINITY
        }
    } else {
        (a * x.ln()).exp_m1()
    }
}

/// `(1 + s)^(1/a)` for `s > -1`, `a != 0`, evaluated as `exp(ln_1p(s) / a)`.
#[inline]
pub(crate) fn one_plus_pow_inv(s: f64, a: f64) -> f64 {
    (s.ln_1p() / a).exp()
}

/// Deformed exponential `exp_a(x) = (1 + a x)^(1/a)`.
pub fn q_exp(p: DeformParam, x: f64, policy: EvalPolicy) -> Checked {
    let a = p.a();
    if a == 0.0 {
        return finite(x.exp());
    }
    let ax = a * x;
    if !ax.is_finite() {
        return Err(DomainError::Overflow);
    }
    if ax <= -1.0 {
        return match policy {
            EvalPolicy::Cutoff if a > 0.0 => Ok(0.0),
            _ => Err(DomainError::NonPositiveBracket),
        };
    }
    finite(one_plus_pow_inv(ax, a))
}

/// Deformed logarithm `ln_a(x) = (x^a - 1) / a`.
pub fn q_ln(p: DeformParam, x: f64) -> Checked {
    if !(x > 0.0) {
        return Err(DomainError::NonPositiveArgument);
    }
    let a = p.a();
    if a == 0.0 {
        return finite(x.ln());
    }
    finite(pow_m1(x, a) / a)
}

/// Membership in `D_a`, the definition set of the deformed exponential.
pub fn in_domain_exp(p: DeformParam, x: f64) -> bool {
    p.is_classical() || p.a() * x > -1.0
}
