//! Deformed arithmetic operators.
//!
//! The subscript family makes the deformed exponential and logarithm into
//! morphisms:
//!
//! ```text
//! x +_a y = x + y + a x y              x -_a y = (x - y) / (1 + a y)
//! x *_a y = (x^a + y^a - 1)^(1/a)      x /_a y = (x^a - y^a + 1)^(1/a)
//! -_a x   = -x / (1 + a x)             1 /_a x = (2 - x^a)^(1/a)
//! ```
//!
//! The dual family is defined through `ln(exp_a(x *^a y)) = ln(exp_a x) ln(exp_a y)`
//! and `exp(ln_a(x +^a y)) = exp(ln_a x) + exp(ln_a y)`, and restores mixed
//! distributivity with the subscript family.
//!
//! Every operator is exact classical arithmetic at `a = 0`.

use crate::deformed::{one_plus_pow_inv, pow_m1, q_exp, q_ln, DeformParam, EvalPolicy};
use crate::error::{finite, Checked, DomainError};

#[inline]
fn positive(x: f64) -> Result<(), DomainError> {
    if x > 0.0 {
        Ok(())
    } else {
        Err(DomainError::NonPositiveArgument)
    }
}

/// `(1 + s)^(1/a)` with the base checked. NaN in `s` means two infinite
/// powers were subtracted.
#[inline]
fn power_of_base(s: f64, a: f64) -> Checked {
    if s.is_nan() {
        return Err(DomainError::Overflow);
    }
    if !(s > -1.0) {
        return Err(DomainError::NonPositiveBase);
    }
    finite(one_plus_pow_inv(s, a))
}

/// `x +_a y = x + y + a x y`.
pub fn add(p: DeformParam, x: f64, y: f64) -> Checked {
    finite(x + y + p.a() * x * y)
}

/// `x -_a y = (x - y) / (1 + a y)`.
pub fn sub(p: DeformParam, x: f64, y: f64) -> Checked {
    let den = 1.0 + p.a() * y;
    if den == 0.0 {
        return Err(DomainError::SingularDenominator);
    }
    finite((x - y) / den)
}

/// Opposite element `-_a x = -x / (1 + a x)`; undefined at `x = -1/a`.
pub fn neg(p: DeformParam, x: f64) -> Checked {
    let den = 1.0 + p.a() * x;
    if den == 0.0 {
        return Err(DomainError::SingularDenominator);
    }
    finite(-x / den)
}

/// `x *_a y = (x^a + y^a - 1)^(1/a)` for `x, y > 0`.
pub fn mul(p: DeformParam, x: f64, y: f64) -> Checked {
    positive(x)?;
    positive(y)?;
    let a = p.a();
    if a == 0.0 {
        return finite(x * y);
    }
    power_of_base(pow_m1(x, a) + pow_m1(y, a), a)
}

/// `x /_a y = (x^a - y^a + 1)^(1/a)` for `x, y > 0`.
pub fn div(p: DeformParam, x: f64, y: f64) -> Checked {
    positive(x)?;
    positive(y)?;
    let a = p.a();
    if a == 0.0 {
        return finite(x / y);
    }
    power_of_base(pow_m1(x, a) - pow_m1(y, a), a)
}

/// Inverse element `1 /_a x = (2 - x^a)^(1/a)`.
///
/// For `a > 0` zero is invertible (`0^a = 0`, so `1 /_a 0 = 2^(1/a)`), and a
/// zero base gives the finite value 0 (`1 /_a 2^(1/a) = 0`).
pub fn inv(p: DeformParam, x: f64) -> Checked {
    let a = p.a();
    if x < 0.0 || (x == 0.0 && a <= 0.0) || x.is_nan() {
        return Err(DomainError::NonPositiveArgument);
    }
    if a == 0.0 {
        return finite(1.0 / x);
    }
    let s = -pow_m1(x, a);
    if s == -1.0 && a > 0.0 {
        return Ok(0.0);
    }
    power_of_base(s, a)
}

/// Dual product `x *^a y = (exp(ln(1 + a x) ln(1 + a y) / a) - 1) / a`.
pub fn dual_mul(p: DeformParam, x: f64, y: f64) -> Checked {
    let a = p.a();
    if a == 0.0 {
        return finite(x * y);
    }
    let (ax, ay) = (a * x, a * y);
    if !(ax > -1.0 && ay > -1.0) {
        return Err(DomainError::NonPositiveBracket);
    }
    let t = ax.ln_1p() * ay.ln_1p() / a;
    finite(t.exp_m1() / a)
}

/// Dual sum `x +^a y = [a ln(exp(x^a/a) + exp(y^a/a))]^(1/a)` for `x, y > 0`.
///
/// The exponentials are shifted by the larger of `x^a/a`, `y^a/a`. Near the
/// classical limit the equivalent form `exp_a(ln(exp(ln_a x) + exp(ln_a y)))`
/// is used, since `1/a` swamps the shift.
pub fn dual_add(p: DeformParam, x: f64, y: f64) -> Checked {
    positive(x)?;
    positive(y)?;
    let a = p.a();
    if a == 0.0 {
        return finite(x + y);
    }
    if p.is_near_classical() {
        let l = log_add_exp(q_ln(p, x)?, q_ln(p, y)?);
        return q_exp(p, l, EvalPolicy::Strict).map_err(|e| match e {
            DomainError::NonPositiveBracket => DomainError::NonPositiveBase,
            other => other,
        });
    }
    let ex = x.powf(a) / a;
    let ey = y.powf(a) / a;
    if !(ex.is_finite() && ey.is_finite()) {
        return Err(DomainError::Overflow);
    }
    let (hi, lo) = if ex >= ey { (ex, ey) } else { (ey, ex) };
    let bracket = a * hi + a * (lo - hi).exp().ln_1p();
    if !(bracket > 0.0) {
        return Err(DomainError::NonPositiveBase);
    }
    finite((bracket.ln() / a).exp())
}

/// `ln(exp(u) + exp(v))` without overflow.
pub fn log_add_exp(u: f64, v: f64) -> f64 {
    let (hi, lo) = if u >= v { (u, v) } else { (v, u) };
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}
