//! The `qalg` command line.
//!
//! Results go to `out`, diagnostics to `err`. Exit codes: 0 on success (or
//! every selected law reaching its expected verdict), 1 for usage and parse
//! errors, 2 for domain errors and failed numerical checks.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::deformed::{q_exp, q_ln, DeformParam, EvalPolicy};
use crate::error::{Checked, Span};
use crate::expr::{self, EvalEnv, EvalErrorKind};
use crate::laws::{self, Law, OpReport, SampleSpec, Verdict};
use crate::nonextensive::{compose, product_dist, tsallis_entropy, EntropyParams, ProbDist};
use crate::ratio::RatioChain;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;

/// Agreement required between joint and composed entropies.
pub const ENTROPY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "qalg", version, about = "Deformed q-algebra calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PolicyArg {
    Strict,
    Cutoff,
}

impl From<PolicyArg> for EvalPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Strict => EvalPolicy::Strict,
            PolicyArg::Cutoff => EvalPolicy::Cutoff,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFn {
    Qexp,
    Qln,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an expression.
    Eval {
        /// Deformation parameter.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, value_enum, default_value = "strict")]
        policy: PolicyArg,
        /// Variable binding, `name=value`. Repeatable.
        #[arg(long = "var", value_parser = parse_binding)]
        vars: Vec<(String, f64)>,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Check algebraic laws by seeded sampling. The selector may be a glob.
    Laws {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
        a_min: f64,
        #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
        a_max: f64,
        selector: String,
    },
    /// Compose step growth ratios of a value series under +_1.
    Ratio {
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        values: Vec<f64>,
    },
    /// Tsallis entropy of one distribution file, or of two and their product.
    Entropy {
        #[arg(long, allow_negative_numbers = true)]
        q: f64,
        #[arg(long, default_value_t = 1.0)]
        k: f64,
        file: PathBuf,
        file2: Option<PathBuf>,
    },
    /// Tabulate qexp or qln on a uniform grid as CSV.
    Table {
        #[arg(long = "fn", value_enum)]
        func: TableFn,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        min: f64,
        #[arg(long, allow_negative_numbers = true)]
        max: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value = "strict")]
        policy: PolicyArg,
    },
}

fn parse_binding(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    let name = name.trim();
    let valid = name.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !valid {
        return Err(format!("`{name}` is not a valid variable name"));
    }
    let v: f64 = value
        .trim()
        .parse()
        .map_err(|_| format!("`{value}` is not a number"))?;
    if !v.is_finite() {
        return Err(format!("`{value}` is not finite"));
    }
    Ok((name.to_string(), v))
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Eval {
            a,
            policy,
            vars,
            expr,
        } => cmd_eval(&expr, a, policy.into(), &vars, out, err),
        Command::Laws {
            seed,
            count,
            a_min,
            a_max,
            selector,
        } => {
            let spec = SampleSpec {
                seed,
                count,
                a_range: (a_min, a_max),
                ..SampleSpec::default()
            };
            cmd_laws(&selector, &spec, out, err)
        }
        Command::Ratio { values } => cmd_ratio(values, out, err),
        Command::Entropy { q, k, file, file2 } => {
            cmd_entropy(&file, file2.as_deref(), q, k, out, err)
        }
        Command::Table {
            func,
            a,
            min,
            max,
            steps,
            policy,
        } => cmd_table(func, a, min, max, steps, policy.into(), out, err),
    };
    result.unwrap_or_else(|e| {
        // broken pipe or similar
        let _ = writeln!(err, "error: {e}");
        EXIT_USAGE
    })
}

type CmdResult = std::io::Result<i32>;

/// `v` with 17 significant digits, trailing zeros trimmed; scientific
/// notation outside `1e-5 <= |v| < 1e17`.
pub fn format_sig17(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Prints `message` with carets under `span` of `src`.
fn diagnostic(err: &mut dyn Write, src: &str, span: Span, message: &str) -> std::io::Result<()> {
    let start = src[..span.start.min(src.len())].chars().count();
    let width = src[span.start.min(src.len())..span.end.min(src.len())]
        .chars()
        .count()
        .max(1);
    writeln!(err, "error: {message}")?;
    writeln!(err, "  {src}")?;
    writeln!(err, "  {}{}", " ".repeat(start), "^".repeat(width))
}

fn cmd_eval(
    src: &str,
    a: f64,
    policy: EvalPolicy,
    vars: &[(String, f64)],
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let param = match DeformParam::new(a) {
        Ok(p) => p,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let tree = match expr::parse_str(src) {
        Ok(t) => t,
        Err(e) => {
            diagnostic(err, src, e.span(), &e.to_string())?;
            return Ok(EXIT_USAGE);
        }
    };
    let mut env = EvalEnv::new(param).with_policy(policy);
    for (name, v) in vars {
        env.bindings.insert(name.clone(), *v);
    }
    match expr::evaluate(&tree, &env) {
        Ok(v) => {
            writeln!(out, "{}", format_sig17(v))?;
            Ok(EXIT_OK)
        }
        Err(e) => {
            let message = match &e.kind {
                EvalErrorKind::Domain(d) => format!("domain error ({}): {d}", d.name()),
                other => other.to_string(),
            };
            diagnostic(err, src, e.span, &message)?;
            Ok(match e.kind {
                EvalErrorKind::Domain(_) => EXIT_DOMAIN,
                EvalErrorKind::UnboundVariable(_) => EXIT_USAGE,
            })
        }
    }
}

/// One report line, identical for identical inputs.
pub fn format_report(r: &OpReport) -> String {
    let id = r.law.id();
    match (&r.verdict, r.law.is_identity()) {
        (Verdict::Holds, true) => format!(
            "{id:<14} Holds  max_rel_error={:.3e} samples={}",
            r.max_rel_error, r.samples_tested
        ),
        (Verdict::Holds, false) => match &r.counterexample {
            Some(c) => format!(
                "{id:<14} Holds  counterexample #{}: {c} samples={}",
                c.sample_index, r.samples_tested
            ),
            None => format!("{id:<14} Holds  samples={}", r.samples_tested),
        },
        (Verdict::Fails(c), true) => format!(
            "{id:<14} FAILS  max_rel_error={:.3e} worst: {c} samples={}",
            r.max_rel_error, r.samples_tested
        ),
        (Verdict::Fails(c), false) => format!(
            "{id:<14} FAILS  no counterexample; closest: {c} samples={}",
            r.samples_tested
        ),
    }
}

fn cmd_laws(
    selector: &str,
    spec: &SampleSpec,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let pattern = match glob::Pattern::new(selector) {
        Ok(p) => p,
        Err(e) => {
            writeln!(err, "error: bad selector `{selector}`: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let selected = Law::select(|id| pattern.matches(id));
    if selected.is_empty() {
        writeln!(
            err,
            "error: {}",
            laws::LawError::UnknownLaw(selector.to_string())
        )?;
        writeln!(
            err,
            "known laws: {}",
            Law::ALL
                .iter()
                .map(|l| l.id())
                .collect::<Vec<_>>()
                .join(", ")
        )?;
        return Ok(EXIT_USAGE);
    }
    if let Err(e) = spec.validate() {
        writeln!(err, "error: {e}")?;
        return Ok(EXIT_USAGE);
    }
    let mut all_hold = true;
    for law in selected {
        let report = laws::check_law(law, spec).expect("validated spec");
        all_hold &= report.holds();
        writeln!(out, "{}", format_report(&report))?;
    }
    Ok(if all_hold { EXIT_OK } else { EXIT_DOMAIN })
}

fn cmd_ratio(values: Vec<f64>, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let report = match RatioChain::new(values).and_then(|c| c.report()) {
        Ok(r) => r,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let steps: Vec<String> = report.steps.iter().map(|s| s.to_string()).collect();
    writeln!(out, "steps: {}", steps.join(", "))?;
    writeln!(out, "composed: {}", report.composed)?;
    writeln!(out, "direct: {}", report.direct)?;
    writeln!(out, "error: {:e}", report.error)?;
    if report.pass() {
        writeln!(out, "PASS")?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "FAIL")?;
        Ok(EXIT_DOMAIN)
    }
}

fn read_dist(path: &Path, err: &mut dyn Write) -> std::io::Result<Option<ProbDist>> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            writeln!(err, "error: cannot read {}: {e}", path.display())?;
            return Ok(None);
        }
    };
    match text.parse() {
        Ok(d) => Ok(Some(d)),
        Err(e) => {
            writeln!(err, "error: {}: {e}", path.display())?;
            Ok(None)
        }
    }
}

fn cmd_entropy(
    file: &Path,
    file2: Option<&Path>,
    q: f64,
    k: f64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let ep = match EntropyParams::new(q, k) {
        Ok(ep) => ep,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let Some(da) = read_dist(file, err)? else {
        return Ok(EXIT_USAGE);
    };
    let db = match file2 {
        Some(f) => match read_dist(f, err)? {
            Some(d) => Some(d),
            None => return Ok(EXIT_USAGE),
        },
        None => None,
    };
    let entropy = |d: &ProbDist, err: &mut dyn Write| -> std::io::Result<Option<f64>> {
        match tsallis_entropy(d, ep) {
            Ok(s) => Ok(Some(s)),
            Err(e) => {
                writeln!(err, "error: {e}")?;
                Ok(None)
            }
        }
    };
    let Some(sa) = entropy(&da, err)? else {
        return Ok(EXIT_DOMAIN);
    };
    let Some(db) = db else {
        writeln!(out, "S = {sa}")?;
        return Ok(EXIT_OK);
    };
    let Some(sb) = entropy(&db, err)? else {
        return Ok(EXIT_DOMAIN);
    };
    let joint = product_dist(&da, &db).expect("product of valid distributions");
    let Some(sj) = entropy(&joint, err)? else {
        return Ok(EXIT_DOMAIN);
    };
    let composed = match compose(sa, sb, ep.lambda()) {
        Ok(c) => c,
        Err(e) => {
            writeln!(err, "error: composition: {e}")?;
            return Ok(EXIT_DOMAIN);
        }
    };
    let rel = laws::scaled_error(sj, composed);
    writeln!(out, "S_A = {sa}")?;
    writeln!(out, "S_B = {sb}")?;
    writeln!(out, "lambda = {}", ep.lambda())?;
    writeln!(out, "S_joint = {sj}")?;
    writeln!(out, "composed = {composed}")?;
    writeln!(out, "error: {rel:e}")?;
    if rel <= ENTROPY_TOLERANCE {
        writeln!(out, "PASS")?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "FAIL")?;
        Ok(EXIT_DOMAIN)
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_table(
    func: TableFn,
    a: f64,
    min: f64,
    max: f64,
    steps: usize,
    policy: EvalPolicy,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    if steps < 2 {
        writeln!(err, "error: --steps must be at least 2")?;
        return Ok(EXIT_USAGE);
    }
    if !(min.is_finite() && max.is_finite()) {
        writeln!(err, "error: the range must be finite")?;
        return Ok(EXIT_USAGE);
    }
    let param = match DeformParam::new(a) {
        Ok(p) => p,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    writeln!(out, "x,value,status")?;
    for i in 0..steps {
        let x = if i == steps - 1 {
            max
        } else {
            min + (max - min) * i as f64 / (steps - 1) as f64
        };
        let v: Checked = match func {
            TableFn::Qexp => q_exp(param, x, policy),
            TableFn::Qln => q_ln(param, x),
        };
        match v {
            Ok(v) => writeln!(out, "{x},{v},ok")?,
            Err(e) => writeln!(out, "{x},,{}", e.name())?,
        }
    }
    Ok(EXIT_OK)
}
