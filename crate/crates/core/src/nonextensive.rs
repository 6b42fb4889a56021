//! Tsallis entropy and pseudo-additive composition.
//!
//! For a discrete distribution `p` and entropic index `q`,
//!
//! ```text
//! S_q(p) = -k (sum p_i - sum p_i^q) / (1 - q)
//! ```
//!
//! and for independent subsystems (`p_ij = p_i r_j`)
//!
//! ```text
//! S(A+B) = S(A) + S(B) + lambda S(A) S(B) = S(A) +_lambda S(B),   lambda = (1 - q) / k
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::deformed::{q_ln, DeformParam};
use crate::error::{Checked, DomainError};
use crate::ops;

/// Tolerance on `sum p_i = 1`.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EntropyError {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("invalid entropy parameters: {0}")]
    InvalidParams(String),
    #[error("0^q is undefined for q = {0} <= 0")]
    UndefinedPower(f64),
}

/// A finite discrete probability distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbDist {
    probs: Vec<f64>,
}

impl ProbDist {
    pub fn new(probs: Vec<f64>) -> Result<Self, EntropyError> {
        if probs.is_empty() {
            return Err(EntropyError::InvalidDistribution("no probabilities".into()));
        }
        if let Some((i, p)) = probs
            .iter()
            .enumerate()
            .find(|(_, p)| !(p.is_finite() && **p >= 0.0))
        {
            return Err(EntropyError::InvalidDistribution(format!(
                "entry {i} is {p}, expected a finite value >= 0"
            )));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(EntropyError::InvalidDistribution(format!(
                "probabilities sum to {total}, expected 1"
            )));
        }
        Ok(ProbDist { probs })
    }

    /// Uniform distribution over `n >= 1` states.
    pub fn uniform(n: usize) -> Result<Self, EntropyError> {
        Self::new(vec![1.0 / n as f64; n])
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    fn has_zero(&self) -> bool {
        self.probs.contains(&0.0)
    }
}

/// One probability per line; `#` starts a comment; blank lines are skipped.
impl FromStr for ProbDist {
    type Err = EntropyError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut probs = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let p: f64 = body.parse().map_err(|_| {
                EntropyError::InvalidDistribution(format!(
                    "line {}: `{body}` is not a number",
                    n + 1
                ))
            })?;
            probs.push(p);
        }
        ProbDist::new(probs)
    }
}

impl fmt::Display for ProbDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.probs {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Entropic index `q` and scale `k` (Boltzmann's constant; 1 by default).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyParams {
    q: f64,
    k: f64,
}

impl EntropyParams {
    pub fn new(q: f64, k: f64) -> Result<Self, EntropyError> {
        if !q.is_finite() {
            return Err(EntropyError::InvalidParams(format!(
                "q = {q} is not finite"
            )));
        }
        if !(k.is_finite() && k > 0.0) {
            return Err(EntropyError::InvalidParams(format!("k = {k} must be > 0")));
        }
        Ok(EntropyParams { q, k })
    }

    pub fn with_q(q: f64) -> Result<Self, EntropyError> {
        Self::new(q, 1.0)
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// Coupling of the composition law, `(1 - q) / k`.
    pub fn lambda(&self) -> f64 {
        (1.0 - self.q) / self.k
    }
}

/// Shannon entropy `-k sum p_i ln p_i`.
pub fn shannon_entropy(d: &ProbDist, k: f64) -> f64 {
    -k * d
        .probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.ln())
        .sum::<f64>()
}

/// Tsallis entropy `-k (sum p_i - sum p_i^q) / (1 - q)`; Shannon at `q = 1`.
///
/// Evaluated term-wise as `-k sum p_i ln_{q-1}(p_i)`, which is algebraically
/// the same sum and stays accurate as `q -> 1`. Zero probabilities contribute
/// nothing for `q > 0` and are rejected for `q <= 0`.
pub fn tsallis_entropy(d: &ProbDist, ep: EntropyParams) -> Result<f64, EntropyError> {
    let q = ep.q();
    if q <= 0.0 && d.has_zero() {
        return Err(EntropyError::UndefinedPower(q));
    }
    if q == 1.0 {
        return Ok(shannon_entropy(d, ep.k()));
    }
    let a = DeformParam::new(q - 1.0).expect("finite q");
    let mut sum = 0.0;
    for &p in d.probs.iter().filter(|&&p| p > 0.0) {
        let l = q_ln(a, p).map_err(|_| EntropyError::UndefinedPower(q))?;
        sum += p * l;
    }
    Ok(-ep.k() * sum)
}

/// Generalized information `I = k ln_{1-q}(p)` of a state with probability `p`.
pub fn info_measure(p: f64, ep: EntropyParams) -> Checked {
    if !(p > 0.0 && p <= 1.0) {
        return Err(DomainError::NonPositiveArgument);
    }
    let a = DeformParam::new(1.0 - ep.q()).expect("finite q");
    Ok(ep.k() * q_ln(a, p)?)
}

/// Pseudo-additive composition `s_a + s_b + lambda s_a s_b`, for entropy or energy.
pub fn compose(s_a: f64, s_b: f64, lambda: f64) -> Checked {
    let p = DeformParam::new(lambda).map_err(|_| DomainError::Overflow)?;
    ops::add(p, s_a, s_b)
}

/// Joint distribution of independent subsystems, row-major.
pub fn product_dist(a: &ProbDist, b: &ProbDist) -> Result<ProbDist, EntropyError> {
    let probs = a
        .probs
        .iter()
        .flat_map(|&p| b.probs.iter().map(move |&r| p * r))
        .collect();
    ProbDist::new(probs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn d(v: &[f64]) -> ProbDist {
        ProbDist::new(v.to_vec()).unwrap()
    }

    fn ep(q: f64) -> EntropyParams {
        EntropyParams::with_q(q).unwrap()
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(tsallis_entropy(&d(&[1.0, 0.0, 0.0]), ep(2.0)).unwrap(), 0.0);
        let s = tsallis_entropy(&d(&[0.25; 4]), ep(2.0)).unwrap();
        assert!((s - 0.75).abs() < 1e-15);
        let s = tsallis_entropy(&d(&[0.5, 0.5]), ep(1.0)).unwrap();
        assert!((s - LN_2).abs() < 1e-15);
    }

    #[test]
    fn deterministic_distribution_has_zero_entropy() {
        for q in [0.2, 0.5, 1.0, 1.5, 3.0] {
            assert_eq!(tsallis_entropy(&d(&[0.0, 1.0]), ep(q)).unwrap(), 0.0);
        }
    }

    #[test]
    fn zero_probability_with_non_positive_q() {
        assert_eq!(
            tsallis_entropy(&d(&[0.0, 1.0]), ep(0.0)),
            Err(EntropyError::UndefinedPower(0.0))
        );
        assert_eq!(
            tsallis_entropy(&d(&[0.0, 1.0]), ep(-1.0)),
            Err(EntropyError::UndefinedPower(-1.0))
        );
        // no zeros: q <= 0 is fine (q = 0 counts the states)
        let s = tsallis_entropy(&d(&[0.25; 4]), ep(0.0)).unwrap();
        assert!((s - 3.0).abs() < 1e-15);
    }

    #[test]
    fn info_examples() {
        for q in [0.3, 1.0, 2.0] {
            assert_eq!(info_measure(1.0, ep(q)).unwrap(), 0.0);
        }
        assert!((info_measure(0.5, ep(2.0)).unwrap() + 1.0).abs() < 1e-15);
        assert!((info_measure(0.5, ep(1.0)).unwrap() + LN_2).abs() < 1e-15);
        assert_eq!(
            info_measure(0.0, ep(2.0)),
            Err(DomainError::NonPositiveArgument)
        );
        assert_eq!(
            info_measure(1.5, ep(2.0)),
            Err(DomainError::NonPositiveArgument)
        );
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose(0.5, 0.5, -1.0), Ok(0.75));
        assert_eq!(compose(0.37, 0.0, 4.2), Ok(0.37));
        assert_eq!(compose(1.0, 2.0, 0.0), Ok(3.0));
    }

    #[test]
    fn product_examples() {
        assert_eq!(product_dist(&d(&[1.0]), &d(&[1.0])).unwrap(), d(&[1.0]));
        assert_eq!(
            product_dist(&d(&[0.5, 0.5]), &d(&[0.5, 0.5])).unwrap(),
            d(&[0.25; 4])
        );
        let got = product_dist(&d(&[0.3, 0.7]), &d(&[0.5, 0.5])).unwrap();
        for (g, e) in got.probs().iter().zip([0.15, 0.15, 0.35, 0.35]) {
            assert!((g - e).abs() < 1e-16);
        }
    }

    #[test]
    fn invalid_distributions() {
        assert!(ProbDist::new(vec![]).is_err());
        assert!(ProbDist::new(vec![0.5, 0.6]).is_err());
        assert!(ProbDist::new(vec![1.5, -0.5]).is_err());
        assert!(ProbDist::new(vec![f64::NAN, 1.0]).is_err());
        assert!(ProbDist::new(vec![0.5, 0.5 + 1e-10]).is_ok());
    }

    #[test]
    fn invalid_params() {
        assert!(EntropyParams::new(f64::NAN, 1.0).is_err());
        assert!(EntropyParams::new(2.0, 0.0).is_err());
        assert!(EntropyParams::new(2.0, -1.0).is_err());
    }

    #[test]
    fn parses_distribution_files() {
        let text = "# two coins\n0.25\n\n0.25  # tails\n   0.5\n";
        assert_eq!(text.parse::<ProbDist>().unwrap(), d(&[0.25, 0.25, 0.5]));
        assert!("0.5\nhalf\n".parse::<ProbDist>().is_err());
        assert!("# empty\n\n".parse::<ProbDist>().is_err());
        assert!("0.5\n0.4\n".parse::<ProbDist>().is_err());
    }

    #[test]
    fn lambda_from_params() {
        assert_eq!(ep(2.0).lambda(), -1.0);
        assert_eq!(EntropyParams::new(0.5, 2.0).unwrap().lambda(), 0.25);
    }
}
