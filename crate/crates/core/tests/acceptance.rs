//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use deformed_algebra::expr::{parse_str, pretty_print, BinOp, Expr, Func, UnaryOp};
use deformed_algebra::laws::{
    check_law, scaled_error, Expectation, Law, SampleSpec, Verdict, COUNTEREXAMPLE_GAP,
};
use deformed_algebra::nonextensive::{
    compose, product_dist, tsallis_entropy, EntropyParams, ProbDist,
};
use deformed_algebra::{ops, q_exp, q_ln, DeformParam, DomainError, EvalPolicy};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn param(a: f64) -> DeformParam {
    DeformParam::new(a).unwrap()
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:?}, limit {limit:?}"))
    }
}

fn qalg(args: &[&str]) -> Result<String, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_qalg"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !o.status.success() {
        return Err(format!("qalg {args:?} exited {:?}", o.status.code()));
    }
    String::from_utf8(o.stdout).map_err(|e| e.to_string())
}

fn field(out: &str, key: &str) -> Result<f64, String> {
    out.lines()
        .find_map(|l| l.strip_prefix(key))
        .ok_or_else(|| format!("no `{key}` line"))?
        .trim()
        .parse()
        .map_err(|e| format!("{key}: {e}"))
}

fn price_example() -> Outcome {
    let start = Instant::now();
    let out = qalg(&["ratio", "100", "110", "121"])?;
    let steps: Vec<f64> = out
        .lines()
        .find_map(|l| l.strip_prefix("steps:"))
        .ok_or("no steps line")?
        .split(',')
        .map(|s| s.trim().parse().map_err(|e| format!("step: {e}")))
        .collect::<Result<_, _>>()?;
    if steps != [0.1, 0.1] {
        return Err(format!("steps {steps:?}"));
    }
    let composed = field(&out, "composed:")?;
    let direct = field(&out, "direct:")?;
    if (composed - 0.21).abs() > 1e-15 || (direct - 0.21).abs() > 1e-15 {
        return Err(format!("composed {composed}, direct {direct}"));
    }
    if out.lines().last() != Some("PASS") {
        return Err("ratio did not report PASS".into());
    }
    let v: f64 = qalg(&["eval", "--a", "1", "0.1 @+ 0.1"])?
        .trim()
        .parse()
        .map_err(|e| format!("eval output: {e}"))?;
    if (v - 0.21).abs() > 1e-15 {
        return Err(format!("eval gave {v}"));
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!(
        "steps 0.1, 0.1; composed {composed}; direct {direct}; eval {v}; {elapsed:.2?}"
    ))
}

fn law_suite() -> Outcome {
    let start = Instant::now();
    let spec = SampleSpec::new(42, 10_000);
    let mut worst: (f64, &str) = (0.0, "");
    let mut min_gap = f64::INFINITY;
    for &law in Law::ALL {
        let r = check_law(law, &spec).map_err(|e| e.to_string())?;
        if r.verdict != Verdict::Holds {
            return Err(format!("{}: {:?}", law.id(), r.verdict));
        }
        match law.expectation() {
            Expectation::Identity { .. } => {
                if r.max_rel_error > 1e-9 {
                    return Err(format!(
                        "{}: max relative error {:e}",
                        law.id(),
                        r.max_rel_error
                    ));
                }
                if r.max_rel_error >= worst.0 {
                    worst = (r.max_rel_error, law.id());
                }
            }
            Expectation::Counterexample => {
                let c = r
                    .counterexample
                    .ok_or(format!("{}: no counterexample", law.id()))?;
                if c.gap() <= COUNTEREXAMPLE_GAP {
                    return Err(format!("{}: gap {:e}", law.id(), c.gap()));
                }
                min_gap = min_gap.min(c.gap());
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!(
        "{} laws; worst identity {} at {:e}; smallest gap {min_gap:e}; {elapsed:.2?}",
        Law::ALL.len(),
        worst.1,
        worst.0
    ))
}

fn explicit_values() -> Outcome {
    let one = param(1.0);
    let inv0 = ops::inv(one, 0.0);
    let inv2 = ops::inv(one, 2.0);
    if inv0 != Ok(2.0) || inv2 != Ok(0.0) {
        return Err(format!("1/_1 0 = {inv0:?}, 1/_1 2 = {inv2:?}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let a = loop {
            let a: f64 = rng.gen_range(-2.0..2.0);
            if a.abs() >= 1e-3 {
                break a;
            }
        };
        let x = loop {
            let x: f64 = rng.gen_range(-10.0..10.0);
            if 1.0 + a * x > 0.0 {
                break x;
            }
        };
        let v = ops::dual_mul(param(a), x, 0.0).map_err(|e| format!("a={a} x={x}: {e}"))?;
        worst = worst.max(v.abs());
    }
    if worst > 1e-14 {
        return Err(format!("x *^a 0 reached {worst:e}"));
    }
    Ok(format!(
        "1/_1 0 = 2, 1/_1 2 = 0; max |x *^a 0| = {worst:e} over 100 samples"
    ))
}

fn classical_limit() -> Outcome {
    let a = 1e-6;
    let grid = |lo: f64, hi: f64| (0..61).map(move |i| lo + (hi - lo) * i as f64 / 60.0);
    let mut ratios = Vec::new();
    let exp_err =
        |a: f64, x: f64| (q_exp(param(a), x, EvalPolicy::Strict).unwrap() - x.exp()).abs();
    for x in grid(-3.0, 3.0) {
        let (e1, e2) = (exp_err(a, x), exp_err(a / 2.0, x));
        if e1 > 1e-5 * x.exp() || e2 > 0.5e-5 * x.exp() {
            return Err(format!("q_exp at x={x}: {e1:e}, {e2:e}"));
        }
        if x.abs() > 1e-9 {
            ratios.push(e2 / e1);
        }
    }
    let ln_err = |a: f64, x: f64| (q_ln(param(a), x).unwrap() - x.ln()).abs();
    for x in grid(0.1, 10.0) {
        let (e1, e2) = (ln_err(a, x), ln_err(a / 2.0, x));
        let scale = x.ln().abs().max(1.0);
        if e1 > 1e-5 * scale || e2 > 0.5e-5 * scale {
            return Err(format!("q_ln at x={x}: {e1:e}, {e2:e}"));
        }
        ratios.push(e2 / e1);
    }
    let (lo, hi) = ratios
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &r| {
            (lo.min(r), hi.max(r))
        });
    if lo < 0.49 || hi > 0.51 {
        return Err(format!("error ratio at a/2 over a in [{lo}, {hi}]"));
    }
    Ok(format!(
        "both grids within bound; err(a/2)/err(a) in [{lo:.6}, {hi:.6}]"
    ))
}

fn random_dist(rng: &mut ChaCha8Rng) -> ProbDist {
    let n = rng.gen_range(1..=8);
    let w: Vec<f64> = (0..n).map(|_| rng.gen_range(1e-6..1.0)).collect();
    let total: f64 = w.iter().sum();
    ProbDist::new(w.iter().map(|x| x / total).collect()).unwrap()
}

fn pseudo_additivity() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let q = loop {
            let q: f64 = rng.gen_range(0.2..3.0);
            if q != 1.0 {
                break q;
            }
        };
        let (a, b) = (random_dist(&mut rng), random_dist(&mut rng));
        let ep = EntropyParams::with_q(q).unwrap();
        let s = |d: &ProbDist| tsallis_entropy(d, ep).map_err(|e| e.to_string());
        let joint = s(&product_dist(&a, &b).unwrap())?;
        let composed = compose(s(&a)?, s(&b)?, ep.lambda()).map_err(|e| e.to_string())?;
        let rel = if joint == composed {
            0.0
        } else {
            (joint - composed).abs() / joint.abs().max(composed.abs())
        };
        if rel > 1e-10 {
            return Err(format!("q={q}: joint {joint}, composed {composed}"));
        }
        worst = worst.max(rel);
    }
    let u4 = tsallis_entropy(
        &ProbDist::uniform(4).unwrap(),
        EntropyParams::with_q(2.0).unwrap(),
    )
    .map_err(|e| e.to_string())?;
    if (u4 - 0.75).abs() > 1e-15 {
        return Err(format!("uniform-4 at q=2 gave {u4}"));
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!(
        "1000 pairs, worst relative {worst:e}; uniform-4 S_2 = {u4}; {elapsed:.2?}"
    ))
}

fn random_tree(rng: &mut ChaCha8Rng, depth: usize) -> Expr {
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.6) {
            Expr::number(f64::from(rng.gen_range(0u32..1000)) / 8.0)
        } else {
            Expr::var(*["x", "y", "z"].choose(rng).unwrap())
        };
    }
    match rng.gen_range(0..6) {
        0 => {
            let op = *[UnaryOp::Neg, UnaryOp::DeformedNeg].choose(rng).unwrap();
            Expr::unary(op, random_tree(rng, depth - 1))
        }
        1 => {
            let f = *[Func::QExp, Func::QLn, Func::Exp, Func::Ln]
                .choose(rng)
                .unwrap();
            Expr::call(f, vec![random_tree(rng, depth - 1)])
        }
        _ => {
            let op = *BinOp::ALL.choose(rng).unwrap();
            Expr::binary(op, random_tree(rng, depth - 1), random_tree(rng, depth - 1))
        }
    }
}

fn inverse_and_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    let mut n = 0;
    while n < 10_000 {
        let a: f64 = rng.gen_range(-2.0..2.0);
        let x: f64 = rng.gen_range(-5.0..5.0);
        let Ok(y) = q_exp(param(a), x, EvalPolicy::Strict) else {
            continue;
        };
        let back = q_ln(param(a), y).map_err(|e| format!("a={a} x={x} y={y}: {e}"))?;
        worst = worst.max(scaled_error(back, x));
        n += 1;
    }
    if worst > 1e-10 {
        return Err(format!("q_ln(q_exp(x)) off by {worst:e}"));
    }
    for i in 0..1000 {
        let e = random_tree(&mut rng, 8);
        let text = pretty_print(&e);
        let back = parse_str(&text).map_err(|err| format!("tree {i}: `{text}`: {err}"))?;
        if back != e {
            return Err(format!(
                "tree {i}: `{text}` re-parsed as `{}`",
                pretty_print(&back)
            ));
        }
    }
    Ok(format!(
        "10^4 inverse samples, worst {worst:e}; 10^3 trees round-trip"
    ))
}

fn domain_errors() -> Outcome {
    for a in [1.0, 2.0, -0.5, 0.25] {
        let r = ops::sub(param(a), 0.3, -1.0 / a);
        if r != Err(DomainError::SingularDenominator) {
            return Err(format!("sub at a={a}, y=-1/a gave {r:?}"));
        }
    }
    let r = ops::mul(param(1.0), 0.3, 0.4);
    if r != Err(DomainError::NonPositiveBase) {
        return Err(format!("mul(a=1, 0.3, 0.4) gave {r:?}"));
    }
    let mut differing = 0;
    for i in -40..=40 {
        for j in -40..=40 {
            let (a, x) = (i as f64 * 0.05, j as f64 * 0.25);
            let p = param(a);
            let strict = q_exp(p, x, EvalPolicy::Strict);
            let cutoff = q_exp(p, x, EvalPolicy::Cutoff);
            let cut = a > 0.0 && 1.0 + a * x <= 0.0;
            let ok = if cut {
                strict == Err(DomainError::NonPositiveBracket) && cutoff == Ok(0.0)
            } else {
                strict == cutoff
            };
            if !ok {
                return Err(format!("a={a} x={x}: strict {strict:?}, cutoff {cutoff:?}"));
            }
            differing += usize::from(cut);
        }
    }
    Ok(format!(
        "SingularDenominator, NonPositiveBase; policies differ on exactly {differing} cut-off points of 6561"
    ))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("price ratio example", price_example),
        ("law suite", law_suite),
        ("explicit inverse and dual-product values", explicit_values),
        ("classical-limit convergence", classical_limit),
        ("pseudo-additivity", pseudo_additivity),
        ("inverse pair and parser round trip", inverse_and_round_trip),
        ("domain errors and policies", domain_errors),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
