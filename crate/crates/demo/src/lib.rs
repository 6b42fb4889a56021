//! WebAssembly bindings for the browser demo in `www/`.
//!
//! The exported functions are thin wrappers over plain Rust functions so the
//! logic can be tested natively.

use deformed_algebra::expr::{self, EvalEnv};
use deformed_algebra::nonextensive::{
    compose, product_dist, tsallis_entropy, EntropyParams, ProbDist,
};
use deformed_algebra::{q_exp, q_ln, DeformParam, EvalPolicy, Span};
use wasm_bindgen::prelude::*;

/// Upper bound on plotted points.
pub const MAX_STEPS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curve {
    QExp,
    QLn,
}

impl Curve {
    pub fn parse(name: &str) -> Result<Curve, String> {
        match name {
            "qexp" => Ok(Curve::QExp),
            "qln" => Ok(Curve::QLn),
            other => Err(format!("unknown curve `{other}`, expected qexp or qln")),
        }
    }
}

/// `steps` samples of the curve on `[min, max]`; NaN where undefined.
pub fn sample_curve(
    curve: Curve,
    a: f64,
    min: f64,
    max: f64,
    steps: usize,
) -> Result<Vec<f64>, String> {
    let p = DeformParam::new(a).map_err(|e| e.to_string())?;
    if !(min.is_finite() && max.is_finite() && min < max) {
        return Err(format!("bad range [{min}, {max}]"));
    }
    if !(2..=MAX_STEPS).contains(&steps) {
        return Err(format!("steps must be in 2..={MAX_STEPS}"));
    }
    Ok((0..steps)
        .map(|i| {
            let x = min + (max - min) * i as f64 / (steps - 1) as f64;
            let y = match curve {
                Curve::QExp => q_exp(p, x, EvalPolicy::Strict),
                Curve::QLn => q_ln(p, x),
            };
            y.unwrap_or(f64::NAN)
        })
        .collect())
}

/// Parses `"x=1, y=2.5"`.
pub fn parse_bindings(src: &str) -> Result<Vec<(String, f64)>, String> {
    src.split([',', ';', '\n'])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|b| {
            let (name, value) = b
                .split_once('=')
                .ok_or(format!("expected name=value, got `{b}`"))?;
            let v: f64 = value
                .trim()
                .parse()
                .map_err(|_| format!("`{}` is not a number", value.trim()))?;
            Ok((name.trim().to_string(), v))
        })
        .collect()
}

fn caret(src: &str, span: Span, message: &str) -> String {
    let pad = src[..span.start.min(src.len())].chars().count();
    let width = src
        .get(span.start..span.end)
        .map_or(1, |s| s.chars().count().max(1));
    format!("{message}\n{src}\n{}{}", " ".repeat(pad), "^".repeat(width))
}

/// Value of `src` at `a`, or a message with a caret line under the culprit.
pub fn evaluate_expr(src: &str, a: f64, bindings: &str) -> Result<f64, String> {
    let p = DeformParam::new(a).map_err(|e| e.to_string())?;
    let tree = expr::parse_str(src).map_err(|e| caret(src, e.span(), &e.to_string()))?;
    let mut env = EvalEnv::new(p);
    for (name, v) in parse_bindings(bindings)? {
        env.bindings.insert(name, v);
    }
    expr::evaluate(&tree, &env).map_err(|e| caret(src, e.span, &e.kind.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Composition {
    pub s_a: f64,
    pub s_b: f64,
    pub lambda: f64,
    pub joint: f64,
    pub composed: f64,
}

/// Entropies of two whitespace- or comma-separated distributions, of their
/// product, and the pseudo-additive composition of the parts.
pub fn compose_entropies(p_a: &str, p_b: &str, q: f64) -> Result<Composition, String> {
    let dist = |s: &str| -> Result<ProbDist, String> {
        let probs = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| format!("`{t}` is not a number"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        ProbDist::new(probs).map_err(|e| e.to_string())
    };
    let (a, b) = (dist(p_a)?, dist(p_b)?);
    let ep = EntropyParams::with_q(q).map_err(|e| e.to_string())?;
    let s = |d: &ProbDist| tsallis_entropy(d, ep).map_err(|e| e.to_string());
    let joint = s(&product_dist(&a, &b).map_err(|e| e.to_string())?)?;
    let (s_a, s_b) = (s(&a)?, s(&b)?);
    let composed = compose(s_a, s_b, ep.lambda()).map_err(|e| e.to_string())?;
    Ok(Composition {
        s_a,
        s_b,
        lambda: ep.lambda(),
        joint,
        composed,
    })
}

#[wasm_bindgen]
pub fn curve(name: &str, a: f64, min: f64, max: f64, steps: usize) -> Result<Vec<f64>, JsError> {
    let c = Curve::parse(name).map_err(|e| JsError::new(&e))?;
    sample_curve(c, a, min, max, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn evaluate(src: &str, a: f64, bindings: &str) -> Result<f64, JsError> {
    evaluate_expr(src, a, bindings).map_err(|e| JsError::new(&e))
}

/// `[S_A, S_B, lambda, S_joint, composed]`.
#[wasm_bindgen]
pub fn entropy(p_a: &str, p_b: &str, q: f64) -> Result<Vec<f64>, JsError> {
    let c = compose_entropies(p_a, p_b, q).map_err(|e| JsError::new(&e))?;
    Ok(vec![c.s_a, c.s_b, c.lambda, c.joint, c.composed])
}
