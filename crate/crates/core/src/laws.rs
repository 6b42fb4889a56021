//! Seeded verification of the algebraic laws of the deformed operators.
//!
//! Every law in [`Law::ALL`] has a stable identifier. Identities (associativity,
//! morphisms, mixed distributivity, ...) are checked by sampling their domain
//! and measuring `|lhs - rhs|`; the failing laws (non-distributivity, the
//! missing absorbing element, the dual anomalies) are checked by searching for
//! a counterexample. Sample `i` of a run is drawn from its own ChaCha stream
//! keyed by `(seed, i)`, so a report is a pure function of the [`SampleSpec`].
//!
//! Errors are compared on the scale `max(1, |lhs|, |rhs|)`: relative for large
//! values, absolute near zero (several laws have a right-hand side of 0 or 1).

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::deformed::{pow_m1, q_exp, q_ln, DeformParam, EvalPolicy};
use crate::error::DomainError;
use crate::ops;

/// Values of `a` with `|a|` below this are redrawn.
pub const A_EXCLUSION: f64 = 1e-3;
/// Gap a counterexample must exceed.
pub const COUNTEREXAMPLE_GAP: f64 = 1e-6;
/// Samples with `|1 + a y|` below this are redrawn (`-_a`, `/`, `D_a` edges).
pub const NEAR_SINGULAR_DENOMINATOR: f64 = 1e-6;
/// Samples with a power-form base below this are redrawn.
pub const NEAR_ZERO_BASE: f64 = 1e-9;

const MAX_ATTEMPTS: usize = 1000;
const ABSORBING_CANDIDATES: usize = 16;
const ANOMALY_PROBE: f64 = 1e-6;

macro_rules! laws {
    ($($variant:ident => $id:literal, $statement:literal;)*) => {
        /// Closed registry of checkable laws.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Law {
            $($variant,)*
        }

        impl Law {
            pub const ALL: &'static [Law] = &[$(Law::$variant,)*];

            /// Stable identifier, shared by the CLI and the tests.
            pub fn id(self) -> &'static str {
                match self {
                    $(Law::$variant => $id,)*
                }
            }

            /// The law in operator notation.
            pub fn statement(self) -> &'static str {
                match self {
                    $(Law::$variant => $statement,)*
                }
            }
        }

        impl FromStr for Law {
            type Err = LawError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($id => Ok(Law::$variant),)*
                    _ => Err(LawError::UnknownLaw(s.to_string())),
                }
            }
        }
    };
}

laws! {
    AssocAdd => "assoc_add", "(x +a y) +a z = x +a (y +a z)";
    AssocMul => "assoc_mul", "(x *a y) *a z = x *a (y *a z)";
    CommAdd => "comm_add", "x +a y = y +a x";
    CommMul => "comm_mul", "x *a y = y *a x";
    NeutralAdd => "neutral_add", "x +a 0 = 0 +a x = x";
    NeutralMul => "neutral_mul", "x *a 1 = 1 *a x = x";
    Opposite => "opposite", "x -a y = x +a (-a y); x +a (-a x) = 0; (x +a y) -a y = x";
    Inverse => "inverse", "x *a (1 /a x) = 1; (x *a y) /a y = x";
    SignRules => "sign_rules", "-a(-a x) = x";
    GenAdd1 => "gen_add1", "a (x +a y) = (a x) +1 (a y)";
    GenMul1 => "gen_mul1", "(x *a y)^a = (x^a) *1 (y^a)";
    Morphism2a => "morphism_2a", "exp_a(x +a y) = exp_a(x) exp_a(y)";
    Morphism3a => "morphism_3a", "exp_a(x + y) = exp_a(x) *a exp_a(y)";
    Morphism4a => "morphism_4a", "ln_a(x *a y) = ln_a(x) + ln_a(y)";
    Morphism5a => "morphism_5a", "ln_a(x y) = ln_a(x) +a ln_a(y)";
    Morphism2b => "morphism_2b", "exp_a(x -a y) = exp_a(x) / exp_a(y)";
    Morphism3b => "morphism_3b", "exp_a(x - y) = exp_a(x) /a exp_a(y)";
    Morphism4b => "morphism_4b", "ln_a(x /a y) = ln_a(x) - ln_a(y)";
    Morphism5b => "morphism_5b", "ln_a(x / y) = ln_a(x) -a ln_a(y)";
    DualDef9 => "dual_def_9", "ln exp_a(x *^a y) = ln exp_a(x) * ln exp_a(y)";
    DualDef10 => "dual_def_10", "exp ln_a(x +^a y) = exp ln_a(x) + exp ln_a(y)";
    Distrib11 => "distrib_11", "x *^a y +a x *^a z = x *^a (y +a z)";
    Distrib12 => "distrib_12", "x *a y +^a x *a z = x *a (y +^a z)";
    Nondistrib6 => "nondistrib_6", "x *a y + x *a z != x *a (y + z)";
    Nondistrib7 => "nondistrib_7", "x y +a x z != x (y +a z)";
    Nondistrib8 => "nondistrib_8", "x *a y +a x *a z != x *a (y +a z)";
    Nondistrib13 => "nondistrib_13", "x *^a y +^a x *^a z != x *^a (y +^a z)";
    NoAbsorbing => "no_absorbing", "no y with x *a y = y for all x";
    DualAnomalies => "dual_anomalies", "x *^a 0 = 0; x *^a 1 != x; x +^a 0 != x";
}

/// What a law is expected to show.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Expectation {
    /// `lhs = rhs` on every sample, within the scaled tolerance.
    Identity { tolerance: f64 },
    /// Some sample has `|lhs - rhs| > COUNTEREXAMPLE_GAP`.
    Counterexample,
}

impl Law {
    pub fn expectation(self) -> Expectation {
        use Law::*;
        match self {
            Nondistrib6 | Nondistrib7 | Nondistrib8 | Nondistrib13 | NoAbsorbing
            | DualAnomalies => Expectation::Counterexample,
            NeutralAdd | NeutralMul => Expectation::Identity { tolerance: 1e-14 },
            Distrib11 | Distrib12 => Expectation::Identity { tolerance: 1e-9 },
            _ => Expectation::Identity { tolerance: 1e-10 },
        }
    }

    pub fn is_identity(self) -> bool {
        matches!(self.expectation(), Expectation::Identity { .. })
    }

    /// Laws whose identifier matches `pred`, in registry order.
    pub fn select(pred: impl Fn(&str) -> bool) -> Vec<Law> {
        Law::ALL.iter().copied().filter(|l| pred(l.id())).collect()
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LawError {
    #[error("unknown law `{0}`")]
    UnknownLaw(String),
    #[error("invalid sample spec: {0}")]
    InvalidSpec(String),
}

/// How to draw samples.
///
/// `a` is uniform on `a_range` with `|a| < A_EXCLUSION` redrawn. Real operands
/// are uniform on `x_range`; positive operands are `exp(t)` with `t` uniform
/// on `x_range`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSpec {
    pub seed: u64,
    pub count: usize,
    pub a_range: (f64, f64),
    pub x_range: (f64, f64),
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec {
            seed: 42,
            count: 10_000,
            a_range: (-2.0, 2.0),
            x_range: (-2.0, 2.0),
        }
    }
}

impl SampleSpec {
    pub fn new(seed: u64, count: usize) -> Self {
        SampleSpec {
            seed,
            count,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), LawError> {
        let ordered = |(lo, hi): (f64, f64)| lo.is_finite() && hi.is_finite() && lo <= hi;
        if self.count == 0 {
            return Err(LawError::InvalidSpec("count must be positive".into()));
        }
        if !ordered(self.a_range) || !ordered(self.x_range) {
            return Err(LawError::InvalidSpec(
                "ranges must be finite and ordered".into(),
            ));
        }
        let (lo, hi) = self.a_range;
        if lo > -A_EXCLUSION && hi < A_EXCLUSION {
            return Err(LawError::InvalidSpec(format!(
                "a range [{lo}, {hi}] lies inside the excluded band |a| < {A_EXCLUSION}"
            )));
        }
        Ok(())
    }
}

/// A concrete sample exhibiting a gap between the two sides of a law.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub sample_index: usize,
    pub inputs: Vec<(&'static str, f64)>,
    pub lhs: f64,
    pub rhs: f64,
}

impl Counterexample {
    pub fn gap(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, v)) in self.inputs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{name}={v}")?;
        }
        write!(f, " lhs={} rhs={} gap={:e}", self.lhs, self.rhs, self.gap())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    /// The law reached its expected outcome (for failing laws: a
    /// counterexample was found).
    Holds,
    /// It did not; carries the sample closest to showing why.
    Fails(Counterexample),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OpReport {
    pub law: Law,
    pub samples_tested: usize,
    pub max_abs_error: f64,
    pub max_rel_error: f64,
    pub worst_case_inputs: Vec<(&'static str, f64)>,
    pub verdict: Verdict,
    /// For counterexample laws, the first witness found.
    pub counterexample: Option<Counterexample>,
}

impl OpReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// Check one law.
pub fn check_law(law: Law, spec: &SampleSpec) -> Result<OpReport, LawError> {
    spec.validate()?;
    Ok(match law {
        Law::NoAbsorbing => run_no_absorbing(spec),
        Law::DualAnomalies => run_dual_anomalies(spec),
        _ => run_pairs(law, spec),
    })
}

/// Check a law by identifier.
pub fn check_law_id(id: &str, spec: &SampleSpec) -> Result<OpReport, LawError> {
    check_law(id.parse()?, spec)
}

/// `|l - r| / max(1, |l|, |r|)`.
pub fn scaled_error(l: f64, r: f64) -> f64 {
    (l - r).abs() / l.abs().max(r.abs()).max(1.0)
}

// ---------------------------------------------------------------------------
// sampling

/// Why a drawn sample was discarded.
#[derive(Debug, Clone, Copy)]
enum Reject {
    Domain,
    NearSingular,
}

impl From<DomainError> for Reject {
    fn from(_: DomainError) -> Self {
        Reject::Domain
    }
}

type Trial = Result<(Vec<(&'static str, f64)>, Vec<(f64, f64)>), Reject>;

struct Sampler<'a> {
    rng: ChaCha8Rng,
    spec: &'a SampleSpec,
}

impl<'a> Sampler<'a> {
    fn new(spec: &'a SampleSpec, index: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        rng.set_stream(index as u64);
        Sampler { rng, spec }
    }

    fn uniform(&mut self, (lo, hi): (f64, f64)) -> f64 {
        if lo == hi {
            lo
        } else {
            self.rng.gen_range(lo..=hi)
        }
    }

    fn a(&mut self) -> Result<(f64, DeformParam), Reject> {
        let a = self.uniform(self.spec.a_range);
        if a.abs() < A_EXCLUSION {
            return Err(Reject::Domain);
        }
        Ok((a, DeformParam::new(a).expect("finite a")))
    }

    fn real(&mut self) -> f64 {
        self.uniform(self.spec.x_range)
    }

    fn pos(&mut self) -> f64 {
        self.uniform(self.spec.x_range).exp()
    }
}

/// `|1 + a y|` far enough from zero.
fn denom_ok(a: f64, y: f64) -> Result<(), Reject> {
    if (1.0 + a * y).abs() < NEAR_SINGULAR_DENOMINATOR {
        Err(Reject::NearSingular)
    } else {
        Ok(())
    }
}

/// `1 + a x` comfortably positive.
fn bracket_ok(a: f64, x: f64) -> Result<(), Reject> {
    let b = 1.0 + a * x;
    if b <= 0.0 {
        Err(Reject::Domain)
    } else if b < NEAR_SINGULAR_DENOMINATOR {
        Err(Reject::NearSingular)
    } else {
        Ok(())
    }
}

fn base_ok(base: f64) -> Result<(), Reject> {
    if base <= 0.0 {
        Err(Reject::Domain)
    } else if base < NEAR_ZERO_BASE {
        Err(Reject::NearSingular)
    } else {
        Ok(())
    }
}

/// Base of `x *a y`.
fn mul_base(a: f64, x: f64, y: f64) -> f64 {
    1.0 + pow_m1(x, a) + pow_m1(y, a)
}

/// Base of `x /a y`.
fn div_base(a: f64, x: f64, y: f64) -> f64 {
    1.0 + pow_m1(x, a) - pow_m1(y, a)
}

/// Draws until the trial is accepted, giving up after `MAX_ATTEMPTS`.
fn draw(spec: &SampleSpec, index: usize, trial: &dyn Fn(&mut Sampler) -> Trial) -> Trial {
    let mut s = Sampler::new(spec, index);
    let mut last = Err(Reject::Domain);
    for _ in 0..MAX_ATTEMPTS {
        last = trial(&mut s);
        if last.is_ok() {
            break;
        }
    }
    last
}

fn exp_a(p: DeformParam, x: f64) -> Result<f64, DomainError> {
    q_exp(p, x, EvalPolicy::Strict)
}

fn pair_trial(law: Law) -> Box<dyn Fn(&mut Sampler) -> Trial> {
    use ops::*;
    match law {
        Law::AssocAdd => Box::new(|s| {
            let (a, p) = s.a()?;
            let (x, y, z) = (s.real(), s.real(), s.real());
            let l = add(p, add(p, x, y)?, z)?;
            let r = add(p, x, add(p, y, z)?)?;
            Ok((vec![("a", a), ("x", x), ("y", y), ("z", z)], vec![(l, r)]))
        }),
        Law::AssocMul => Box::new(|s| {
            let (a, p) = s.a()?;
            let (x, y, z) = (s.pos(), s.pos(), s.pos());
            base_ok(mul_base(a, x, y))?;
            base_ok(mul_base(a, y, z))?;
            let xy = mul(p, x, y)?;
            let yz = mul(p, y, z)?;
            base_ok(mul_base(a, xy, z))?;
            base_ok(mul_base(a, x, yz))?;
            let l = mul(p, xy, z)?;
            let r = mul(p, x, yz)?;
            Ok((vec![("a", a), ("x", x), ("y", y), ("z", z)], vec![(l, r)]))
        }),
        Law::CommAdd => Box::new(|s| {
            let (a, p) = s.a()?;
            let (x, y) = (s.real(), s.real());
            let pair = (add(p, x, y)?, add(p, y, x)?);
            Ok((vec![("a", a), ("x", x), ("y", y)], vec![pair]))
        }),
        Law::CommMul => Box::new(|s| {
            let (a, p) = s.a()?;
            let (x, y) = (s.pos(), s.pos());
            base_ok(mul_base(a, x, y))?;
            let pair = (mul(p, x, y)?, mul(p, y, x)?);
            Ok((vec![("a", a), ("x", x), ("y", y)], vec![pair]))
        }),
        Law::NeutralAdd => Box::new(|s| {
            let (a, p) = s.a()?;
            let x = s.real();
            let pairs = vec![(add(p, x, 0.0)?, x), (add(p, 0.0, x)?, x)];
            Ok((vec![("a", a), ("x", x)], pairs))
        }),
        Law::NeutralMul => Box::new(|s| {
            let (a, p) = s.a()?;
            let x = s.pos();
            let pairs = vec![(mul(p, x, 1.0)?, x), (mul(p, 1.0, x)?, x)];
            Ok((vec![("a", a), ("x", x)], pairs))
        }),
        Law::Opposite => Box::new(|s| {
            let (a, p) = s.a()?;
            let (x, y) = (s.real(), s.real());
            denom_ok(a, x)?;
            denom_ok(a, y)?;
            let pairs = vec![
                (sub(p, x, y)?, add(p, x, neg(p, y)?)?),
                (add(p, x, neg(p, x)?)?, 0.0),
                (sub(p, add(p, x, y)?, y)?, x),
            ];
            Ok((vec![("a", a), ("x", x), ("y", y)], pairs))
        }),
        Law::Inverse => Box::new(|s| {
            let (a, p) = s.a()?;
            let (x, y) = (s.pos(), s.pos());
            base_ok(1.0 - pow_m1(x, a))?;
            base_ok(mul_base(a, x, y))?;
            let xy = mul(p, x, y)?;
            base_ok(div_base(a, xy, y))?;
            let pairs = vec![(mul(p, x, inv(p, x)?)?, 1.0), (div(p, xy, y)?, x)];
            Ok((vec![("a", a), ("x", x), ("y", y)], pairs))
        }),
        Law::SignRules => Box::new(|s| {
            let (a, p) = s.a()?;
            let x = s.real();
            denom_ok(a, x)?;
            let pair = (neg(p, neg(p, x)?)?, x);
            Ok((vec![("a", a), ("x", x)], vec![pair]))
        }),
        Law::GenAdd1 => Box::new(|s| {
            let (a, p) = s.a()?;
            let (x, y) = (s.real(), s.real());
            let one = DeformParam::new(1.0).expect("a = 1");
            let pair = (a * add(p, x, y)?, add(one, a * x, a * y)?);
            Ok((vec![("a", a), ("x", x), ("y", y)], vec![pair]))
        }),
        Law::GenMul1 => Box::new(|s| {
            let (a, p) = s.a()?;
            let (x, y) = (s.pos(), s.pos());
            base_ok(mul_base(a, x, y))?;
            let one = DeformParam::new(1.0).expect("a = 1");
            let l = mul(p, x, y)?.powf(a);
            let r = mul(one, x.powf(a), y.powf(a))?;
            Ok((vec![("a", a), ("x", x), ("y", y)], vec![(l, r)]))
        }),
        Law::Morphism2a => Box::new(|s| {
            let (a, p) = s.a()?;
            let (x, y) = (s.real(), s.real());
            bracket_ok(a, x)?;
            bracket_ok(a, y)?;
            let l = exp_a(p, add(p, x, y)?)?;
            let r = exp_a(p, x)? * exp_a(p, y)?;
            Ok((vec![("a", a), ("x", x), ("y", y)], vec![(l, r)]))
        }),
        Law::Morphism3a => Box::new(|s| {
            let (a, p) = s.a()?;
            let (x, y) = (s.real(), s.real());
            bracket_ok(a, x)?;
            bracket_ok(a, y)?;
            bracket_ok(a, x + y)?;
            let l = exp_a(p, x + y)?;
            let r = mul(p, exp_a(p, x)?, exp_a(p, y)?)?;
            Ok((vec![("a", a), ("x", x), ("y", y)], vec![(l, r)]))
        }),
        Law::Morphism4a => Box::new(|s| {
            let (a, p) = s.a()?;
            let (x, y) = (s.pos(), s.pos());
            base_ok(mul_base(a, x, y))?;
            let l = q_ln(p, mul(p, x, y)?)?;
            let r = q_ln(p, x)? + q_ln(p, y)?;
            Ok((vec![("a", a), ("x", x), ("y", y)], vec![(l, r)]))
        }),
        Law::Morphism5a => Box::new(|s| {
            let (a, p) = s.a()?;
            let (x, y) = (s.pos(), s.pos());
            let l = q_ln(p, x * y)?;
            let r = add(p, q_ln(p, x)?, q_ln(p, y)?)?;
            Ok((vec![("a", a), ("x", x), ("y", y)], vec![(l, r)]))
        }),
        Law::Morphism2b => Box::new(|s| {
            let (a, p) = s.a()?;
            let (x, y) = (s.real(), s.real());
            bracket_ok(a, x)?;
            bracket_ok(a, y)?;
            let l = exp_a(p, sub(p, x, y)?)?;
            let r = exp_a(p, x)? / exp_a(p, y)?;
            Ok((vec![("a", a), ("x", x), ("y", y)], vec![(l, r)]))
        }),
        Law::Morphism3b => Box::new(|s| {
            let (a, p) = s.a()?;
            let (x, y) = (s.real(), s.real());
            bracket_ok(a, x)?;
            bracket_ok(a, y)?;
            bracket_ok(a, x - y)?;
            let l = exp_a(p, x - y)?;
            let r = div(p, exp_a(p, x)?, exp_a(p, y)?)?;
            Ok((vec![("a", a), ("x", x), ("y", y)], vec![(l, r)]))
        }),
        Law::Morphism4b => Box::new(|s| {
            let (a, p) = s.a()?;
            let (x, y) = (s.pos(), s.pos());
            base_ok(div_base(a, x, y))?;
            let l = q_ln(p, div(p, x, y)?)?;
            let r = q_ln(p, x)? - q_ln(p, y)?;
            Ok((vec![("a", a), ("x", x), ("y", y)], vec![(l, r)]))
        }),
        Law::Morphism5b => Box::new(|s| {
            let (a, p) = s.a()?;
            let (x, y) = (s.pos(), s.pos());
            let l = q_ln(p, x / y)?;
            let r = sub(p, q_ln(p, x)?, q_ln(p, y)?)?;
            Ok((vec![("a", a), ("x", x), ("y", y)], vec![(l, r)]))
        }),
        Law::DualDef9 => Box::new(|s| {
            let (a, p) = s.a()?;
            let (x, y) = (s.real(), s.real());
            bracket_ok(a, x)?;
            bracket_ok(a, y)?;
            let v = dual_mul(p, x, y)?;
            // the left side re-enters exp_a; near its boundary one ulp of v is ruinous
            bracket_ok(a, v)?;
            let l = exp_a(p, v)?.ln();
            let r = exp_a(p, x)?.ln() * exp_a(p, y)?.ln();
            Ok((vec![("a", a), ("x", x), ("y", y)], vec![(l, r)]))
        }),
        Law::DualDef10 => Box::new(|s| {
            let (a, p) = s.a()?;
            let (x, y) = (s.pos(), s.pos());
            let l = q_ln(p, dual_add(p, x, y)?)?;
            let r = log_add_exp(q_ln(p, x)?, q_ln(p, y)?);
            Ok((vec![("a", a), ("x", x), ("y", y)], vec![(l, r)]))
        }),
        Law::Distrib11 => Box::new(|s| {
            let (a, p) = s.a()?;
            let (x, y, z) = (s.real(), s.real(), s.real());
            bracket_ok(a, x)?;
            bracket_ok(a, y)?;
            bracket_ok(a, z)?;
            let l = add(p, dual_mul(p, x, y)?, dual_mul(p, x, z)?)?;
            let r = dual_mul(p, x, add(p, y, z)?)?;
            Ok((vec![("a", a), ("x", x), ("y", y), ("z", z)], vec![(l, r)]))
        }),
        Law::Distrib12 => Box::new(|s| {
            let (a, p) = s.a()?;
            let (x, y, z) = (s.pos(), s.pos(), s.pos());
            base_ok(mul_base(a, x, y))?;
            base_ok(mul_base(a, x, z))?;
            let yz = dual_add(p, y, z)?;
            base_ok(mul_base(a, x, yz))?;
            let l = dual_add(p, mul(p, x, y)?, mul(p, x, z)?)?;
            let r = mul(p, x, yz)?;
            Ok((vec![("a", a), ("x", x), ("y", y), ("z", z)], vec![(l, r)]))
        }),
        Law::Nondistrib6 => Box::new(|s| {
            let (a, p) = s.a()?;
            let (x, y, z) = (s.pos(), s.pos(), s.pos());
            let l = mul(p, x, y)? + mul(p, x, z)?;
            let r = mul(p, x, y + z)?;
            Ok((vec![("a", a), ("x", x), ("y", y), ("z", z)], vec![(l, r)]))
        }),
        Law::Nondistrib7 => Box::new(|s| {
            let (a, p) = s.a()?;
            let (x, y, z) = (s.real(), s.real(), s.real());
            let l = add(p, x * y, x * z)?;
            let r = x * add(p, y, z)?;
            Ok((vec![("a", a), ("x", x), ("y", y), ("z", z)], vec![(l, r)]))
        }),
        Law::Nondistrib8 => Box::new(|s| {
            let (a, p) = s.a()?;
            let (x, y, z) = (s.pos(), s.pos(), s.pos());
            let l = add(p, mul(p, x, y)?, mul(p, x, z)?)?;
            let r = mul(p, x, add(p, y, z)?)?;
            Ok((vec![("a", a), ("x", x), ("y", y), ("z", z)], vec![(l, r)]))
        }),
        Law::Nondistrib13 => Box::new(|s| {
            let (a, p) = s.a()?;
            let (x, y, z) = (s.pos(), s.pos(), s.pos());
            let l = dual_add(p, dual_mul(p, x, y)?, dual_mul(p, x, z)?)?;
            let r = dual_mul(p, x, dual_add(p, y, z)?)?;
            Ok((vec![("a", a), ("x", x), ("y", y), ("z", z)], vec![(l, r)]))
        }),
        Law::NoAbsorbing | Law::DualAnomalies => unreachable!("custom runners"),
    }
}

/// Running maxima over accepted samples.
#[derive(Default)]
struct Tally {
    tested: usize,
    max_abs: f64,
    max_rel: f64,
    worst: Option<Counterexample>,
    first_witness: Option<Counterexample>,
}

impl Tally {
    fn record(&mut self, index: usize, inputs: &[(&'static str, f64)], l: f64, r: f64) {
        let abs = (l - r).abs();
        let rel = scaled_error(l, r);
        self.max_abs = self.max_abs.max(abs);
        if self.worst.is_none() || rel > self.max_rel {
            self.max_rel = self.max_rel.max(rel);
            self.worst = Some(Counterexample {
                sample_index: index,
                inputs: inputs.to_vec(),
                lhs: l,
                rhs: r,
            });
        }
        if self.first_witness.is_none() && abs > COUNTEREXAMPLE_GAP {
            self.first_witness = Some(Counterexample {
                sample_index: index,
                inputs: inputs.to_vec(),
                lhs: l,
                rhs: r,
            });
        }
    }

    fn worst_inputs(&self) -> Vec<(&'static str, f64)> {
        self.worst
            .as_ref()
            .map(|c| c.inputs.clone())
            .unwrap_or_default()
    }
}

/// Placeholder when no sample could be drawn at all.
fn no_samples() -> Counterexample {
    Counterexample {
        sample_index: 0,
        inputs: Vec::new(),
        lhs: f64::NAN,
        rhs: f64::NAN,
    }
}

fn run_pairs(law: Law, spec: &SampleSpec) -> OpReport {
    let trial = pair_trial(law);
    let mut tally = Tally::default();
    for index in 0..spec.count {
        if let Ok((inputs, pairs)) = draw(spec, index, trial.as_ref()) {
            tally.tested += 1;
            for (l, r) in pairs {
                tally.record(index, &inputs, l, r);
            }
        }
    }
    let verdict = match law.expectation() {
        Expectation::Identity { tolerance } => match &tally.worst {
            Some(_) if tally.max_rel <= tolerance => Verdict::Holds,
            Some(w) => Verdict::Fails(w.clone()),
            None => Verdict::Fails(no_samples()),
        },
        Expectation::Counterexample => match (&tally.first_witness, &tally.worst) {
            (Some(_), _) => Verdict::Holds,
            (None, Some(w)) => Verdict::Fails(w.clone()),
            (None, None) => Verdict::Fails(no_samples()),
        },
    };
    let counterexample = if law.is_identity() {
        None
    } else {
        tally.first_witness.clone()
    };
    OpReport {
        law,
        samples_tested: tally.tested,
        max_abs_error: tally.max_abs,
        max_rel_error: tally.max_rel,
        worst_case_inputs: tally.worst_inputs(),
        verdict,
        counterexample,
    }
}

/// Every sampled `y > 0` must be moved by some sampled `x`: `|x *a y - y| > gap`.
fn run_no_absorbing(spec: &SampleSpec) -> OpReport {
    let law = Law::NoAbsorbing;
    let mut tested = 0;
    let mut max_abs = 0.0f64;
    let mut max_rel = 0.0f64;
    let mut first: Option<Counterexample> = None;
    let mut unmoved: Option<Counterexample> = None;

    for index in 0..spec.count {
        let mut s = Sampler::new(spec, index);
        let drawn = (0..MAX_ATTEMPTS).find_map(|_| {
            let (a, p) = s.a().ok()?;
            let y = s.pos();
            // best witness among the candidate x
            let mut best: Option<(f64, f64)> = None;
            for _ in 0..ABSORBING_CANDIDATES {
                let x = s.pos();
                if let Ok(v) = ops::mul(p, x, y) {
                    if best.is_none_or(|(_, bv)| (v - y).abs() > (bv - y).abs()) {
                        best = Some((x, v));
                    }
                }
            }
            best.map(|(x, v)| (a, y, x, v))
        });
        let Some((a, y, x, v)) = drawn else { continue };
        tested += 1;
        let case = Counterexample {
            sample_index: index,
            inputs: vec![("a", a), ("y", y), ("x", x)],
            lhs: v,
            rhs: y,
        };
        max_abs = max_abs.max(case.gap());
        max_rel = max_rel.max(scaled_error(v, y));
        if case.gap() > COUNTEREXAMPLE_GAP {
            first.get_or_insert(case);
        } else if unmoved.is_none() {
            unmoved = Some(case);
        }
    }

    let verdict = match (&unmoved, &first) {
        (None, Some(_)) => Verdict::Holds,
        (Some(c), _) => Verdict::Fails(c.clone()),
        (None, None) => Verdict::Fails(no_samples()),
    };
    OpReport {
        law,
        samples_tested: tested,
        max_abs_error: max_abs,
        max_rel_error: max_rel,
        worst_case_inputs: unmoved
            .as_ref()
            .or(first.as_ref())
            .map(|c| c.inputs.clone())
            .unwrap_or_default(),
        verdict,
        counterexample: first,
    }
}

/// `x *^a 0 = 0` on every sample (within 1e-14), while `x *^a 1 != x` and
/// `x +^a (small y) != x` each have a witness. The second anomaly needs
/// `a > 0`: for `a < 0`, `x +^a y -> x` as `y -> 0`, so a purely negative
/// `a` range ends in `Fails`.
fn run_dual_anomalies(spec: &SampleSpec) -> OpReport {
    let law = Law::DualAnomalies;
    let trial = |s: &mut Sampler| -> Trial {
        let (a, p) = s.a()?;
        let x = s.pos();
        bracket_ok(a, x)?;
        let pairs = vec![
            (ops::dual_mul(p, x, 0.0)?, 0.0),
            (ops::dual_mul(p, x, 1.0)?, x),
            (ops::dual_add(p, x, ANOMALY_PROBE)?, x),
        ];
        Ok((vec![("a", a), ("x", x)], pairs))
    };

    let mut tested = 0;
    let mut zero_err = 0.0f64;
    let mut zero_worst: Option<Counterexample> = None;
    let mut max_abs = 0.0f64;
    let mut max_rel = 0.0f64;
    let mut one_witness: Option<Counterexample> = None;
    let mut probe_witness: Option<Counterexample> = None;

    for index in 0..spec.count {
        let Ok((inputs, pairs)) = draw(spec, index, &trial) else {
            continue;
        };
        tested += 1;
        let case = |(l, r): (f64, f64)| Counterexample {
            sample_index: index,
            inputs: inputs.clone(),
            lhs: l,
            rhs: r,
        };
        let e0 = scaled_error(pairs[0].0, pairs[0].1);
        if zero_worst.is_none() || e0 > zero_err {
            zero_err = zero_err.max(e0);
            zero_worst = Some(case(pairs[0]));
        }
        for &(l, r) in &pairs {
            max_abs = max_abs.max((l - r).abs());
            max_rel = max_rel.max(scaled_error(l, r));
        }
        if one_witness.is_none() && (pairs[1].0 - pairs[1].1).abs() > COUNTEREXAMPLE_GAP {
            one_witness = Some(case(pairs[1]));
        }
        if probe_witness.is_none() && (pairs[2].0 - pairs[2].1).abs() > COUNTEREXAMPLE_GAP {
            let mut c = case(pairs[2]);
            c.inputs.push(("y", ANOMALY_PROBE));
            probe_witness = Some(c);
        }
    }

    let verdict = match (&zero_worst, &one_witness, &probe_witness) {
        (Some(z), _, _) if zero_err > 1e-14 => Verdict::Fails(z.clone()),
        (Some(_), Some(_), Some(_)) => Verdict::Holds,
        (Some(z), _, _) => Verdict::Fails(z.clone()),
        (None, _, _) => Verdict::Fails(no_samples()),
    };
    OpReport {
        law,
        samples_tested: tested,
        max_abs_error: max_abs,
        max_rel_error: max_rel,
        worst_case_inputs: zero_worst.map(|c| c.inputs).unwrap_or_default(),
        verdict,
        counterexample: one_witness.or(probe_witness),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_round_trips() {
        assert_eq!(Law::ALL.len(), 29);
        for &law in Law::ALL {
            assert_eq!(law.id().parse::<Law>().unwrap(), law);
        }
        assert_eq!(
            "no_such".parse::<Law>(),
            Err(LawError::UnknownLaw("no_such".into()))
        );
    }

    #[test]
    fn sample_spec_validation() {
        assert!(SampleSpec::default().validate().is_ok());
        let zero = SampleSpec {
            count: 0,
            ..SampleSpec::default()
        };
        assert!(zero.validate().is_err());
        let mut s = SampleSpec {
            a_range: (-1e-4, 1e-4),
            ..SampleSpec::default()
        };
        assert!(s.validate().is_err());
        s.a_range = (1.0, -1.0);
        assert!(s.validate().is_err());
        s.a_range = (0.5, 0.5);
        assert!(s.validate().is_ok());
    }

    #[test]
    fn replay_is_deterministic() {
        let spec = SampleSpec::new(7, 200);
        for law in [
            Law::AssocMul,
            Law::Nondistrib8,
            Law::NoAbsorbing,
            Law::DualAnomalies,
        ] {
            assert_eq!(
                check_law(law, &spec).unwrap(),
                check_law(law, &spec).unwrap()
            );
        }
    }

    #[test]
    fn different_seeds_draw_different_samples() {
        let r1 = check_law(Law::AssocAdd, &SampleSpec::new(1, 50)).unwrap();
        let r2 = check_law(Law::AssocAdd, &SampleSpec::new(2, 50)).unwrap();
        assert_ne!(r1.worst_case_inputs, r2.worst_case_inputs);
    }

    #[test]
    fn fixed_a_is_respected() {
        let spec = SampleSpec {
            a_range: (1.0, 1.0),
            ..SampleSpec::new(3, 100)
        };
        let r = check_law(Law::CommMul, &spec).unwrap();
        assert!(r.holds());
        assert_eq!(r.worst_case_inputs[0], ("a", 1.0));
    }

    #[test]
    fn scaled_error_switches_between_absolute_and_relative() {
        assert_eq!(scaled_error(0.0, 1e-3), 1e-3);
        assert_eq!(scaled_error(1000.0, 1001.0), 1.0 / 1001.0);
    }
}
