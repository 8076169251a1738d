//! Front end for `dirichlet-accel`: argument parsing, computation and rendering.
//!
//! [`run`] takes the argument list and returns what the binary would print and its
//! exit code, so the whole interface can be tested without spawning processes.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use dirichlet_accel::accel::{
    catalan, evaluate, l4_accel, lerch_cos, lerch_sin, ramanujan_zeta, AccelParams, EvalConfig, MethodReport,
};
use dirichlet_accel::closedform::l_closed_complex;
use dirichlet_accel::direct::{l_direct_int, Evaluation};
use dirichlet_accel::identities::{lemma_suite, theorem_suite, CaseOutcome};
use dirichlet_accel::numerics::{abs, Complex, PrecisionContext, Real};
use dirichlet_accel::periodic::PeriodicFunction;
use dirichlet_accel::Error;
use rug::float::Round;
use rug::Float;
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Terms used by `--method direct` when `--terms` is not given.
pub const DEFAULT_DIRECT_TERMS: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Accel,
    Direct,
    Closed,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LerchKind {
    Cos,
    Sin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemmas,
    Theorems,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchTarget {
    Zeta3,
    Zeta5,
    Catalan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Csv,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, clap::Args)]
pub struct JobConfig {
    /// Precision in bits (at least 64).
    #[arg(long = "prec", global = true, default_value_t = 256)]
    pub precision_bits: u32,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Seed for `verify`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Terms per series (accelerated methods) or total terms (direct summation).
    #[arg(long = "terms", global = true)]
    pub n_terms: Option<u64>,
    /// The free parameter alpha, as a decimal; beta = pi^2 / alpha.
    #[arg(long, global = true)]
    pub alpha: Option<String>,
}

#[derive(Debug, Parser)]
#[command(name = "dirichlet", version, about = "Dirichlet series with periodic coefficients at integer arguments")]
pub struct Cli {
    #[command(flatten)]
    pub config: JobConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// zeta(s) for odd s >= 3 by Ramanujan's formula.
    Zeta { s: u32 },
    /// L(s, g) for g read from a JSON file.
    Lseries {
        file: std::path::PathBuf,
        s: u32,
        #[arg(long, value_enum, default_value_t = Method::Accel)]
        method: Method,
    },
    /// Catalan's constant.
    Catalan,
    /// sum n^(-2q-1) cos(2 pi n r) or sum n^(-2q) sin(2 pi n r).
    Lerch {
        q: u32,
        r: String,
        #[arg(long, value_enum, default_value_t = LerchKind::Cos)]
        kind: LerchKind,
    },
    /// Runs the identity residual suites; exits 3 on any failure.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 50)]
        trials: u64,
    },
    /// Error against term count, accelerated against direct summation.
    Bench {
        #[arg(long, value_enum)]
        target: BenchTarget,
        #[arg(long, value_enum, default_value_t = Emit::Csv)]
        emit: Emit,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(Error::Parse(_)) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

/// What a run printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// One computed number, with enough metadata to render it.
#[derive(Debug, Clone)]
pub struct Computed {
    pub method: String,
    pub value: Complex,
    /// Significant digits that may be printed.
    pub digits: usize,
    pub terms_used: u64,
    /// Tail bound, for direct summation.
    pub bound: Option<Real>,
    /// The direct-summation companion under `--method both`.
    pub companion: Option<Box<Computed>>,
}

impl JobConfig {
    pub fn context(&self) -> Result<PrecisionContext, CliError> {
        PrecisionContext::new(self.precision_bits).map_err(|e| CliError::Usage(e.to_string()))
    }

    fn params(&self, default: AccelParams, ctx: &PrecisionContext) -> Result<AccelParams, CliError> {
        let params = match self.alpha_value(ctx)? {
            Some(a) => AccelParams::from_alpha(a, ctx)?,
            None => default,
        };
        Ok(params.with_terms(self.n_terms.unwrap_or(0)))
    }

    fn alpha_value(&self, ctx: &PrecisionContext) -> Result<Option<Real>, CliError> {
        self.alpha
            .as_deref()
            .map(|a| ctx.parse_real(a).map_err(|e| CliError::Usage(format!("--alpha: {e}"))))
            .transpose()
    }
}

fn from_report(method: &str, report: MethodReport, ctx: &PrecisionContext) -> Computed {
    Computed {
        method: method.into(),
        value: report.value,
        digits: ctx.reliable_digits(),
        terms_used: report.terms_used,
        bound: None,
        companion: None,
    }
}

fn from_direct(eval: Evaluation, ctx: &PrecisionContext) -> Computed {
    // only the digits the tail bound can defend
    let scale = abs(&eval.value);
    let digits = if eval.error_bound.is_zero() || scale.is_zero() {
        ctx.reliable_digits()
    } else {
        let ratio = Float::with_val(64, &eval.error_bound / &scale).to_f64();
        (-ratio.log10()).floor().clamp(0.0, ctx.reliable_digits() as f64) as usize
    };
    Computed {
        method: "direct".into(),
        value: eval.value,
        digits,
        terms_used: eval.terms_used,
        bound: Some(eval.error_bound),
        companion: None,
    }
}

/// Evaluates the value-producing subcommands.
pub fn compute(command: &Command, config: &JobConfig) -> Result<Computed, CliError> {
    let ctx = config.context()?;
    match command {
        Command::Zeta { s } => {
            if *s < 3 || s % 2 == 0 {
                return Err(CliError::Usage(format!("zeta needs an odd s >= 3, got {s}")));
            }
            let q = (s - 1) / 2;
            let params = config.params(AccelParams::ramanujan_default(q, &ctx), &ctx)?;
            Ok(from_report("ramanujan", ramanujan_zeta(q, &params, &ctx)?, &ctx))
        }
        Command::Lseries { file, s, method } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", file.display())))?;
            let g = PeriodicFunction::from_json(&text)?;
            lseries(&g, *s, *method, config, &ctx)
        }
        Command::Catalan => Ok(from_report("catalan", catalan(&ctx)?, &ctx)),
        Command::Lerch { q, r, kind } => {
            let r = ctx.parse_real(r).map_err(|e| CliError::Usage(format!("r: {e}")))?;
            let params = config.params(AccelParams::from_alpha(ctx.pi(), &ctx)?, &ctx)?;
            let report = match kind {
                LerchKind::Cos => lerch_cos(*q, &r, &params, &ctx)?,
                LerchKind::Sin => lerch_sin(*q, &r, &params, &ctx)?,
            };
            Ok(from_report(&format!("lerch-{kind:?}").to_lowercase(), report, &ctx))
        }
        Command::Verify { .. } | Command::Bench { .. } => {
            Err(CliError::Usage("verify and bench do not produce a single value".into()))
        }
    }
}

/// `L(s, g)` by the requested method.
pub fn lseries(
    g: &PeriodicFunction,
    s: u32,
    method: Method,
    config: &JobConfig,
    ctx: &PrecisionContext,
) -> Result<Computed, CliError> {
    if s == 0 {
        return Err(CliError::Usage("s must be at least 1".into()));
    }
    let direct = || -> Result<Computed, CliError> {
        let n = config.n_terms.unwrap_or(DEFAULT_DIRECT_TERMS);
        Ok(from_direct(l_direct_int(s, g, n, ctx)?, ctx))
    };
    let accel = || -> Result<Computed, CliError> {
        let eval = EvalConfig {
            alpha: config.alpha_value(ctx)?,
            n_terms: config.n_terms.filter(|_| method == Method::Accel).unwrap_or(0),
            ..EvalConfig::default()
        };
        Ok(from_report("accel", evaluate(s, g, &eval, ctx)?, ctx))
    };
    match method {
        Method::Accel => accel(),
        Method::Direct => direct(),
        Method::Closed => Ok(Computed {
            method: "closed".into(),
            value: l_closed_complex(s, g, ctx)?,
            digits: ctx.reliable_digits(),
            terms_used: 0,
            bound: None,
            companion: None,
        }),
        Method::Both => {
            let mut a = accel()?;
            a.method = "both".into();
            a.companion = Some(Box::new(direct()?));
            Ok(a)
        }
    }
}

/// Decimal digits of `x`, truncated (not rounded) to `digits` significant digits.
pub fn format_real(x: &Real, digits: usize) -> String {
    if x.is_zero() || digits == 0 {
        return "0".into();
    }
    let (neg, mantissa, exp) = x.to_sign_string_exp_round(10, Some(digits), Round::Zero);
    let exp = exp.unwrap_or(0);
    let mantissa = mantissa.trim_end_matches('0');
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    // value = 0.mantissa * 10^exp
    if exp > 40 || exp < -20 {
        let (head, tail) = mantissa.split_at(1);
        let tail = if tail.is_empty() { "0" } else { tail };
        let _ = write!(out, "{head}.{tail}e{}", exp - 1);
    } else if exp <= 0 {
        let _ = write!(out, "0.{}{mantissa}", "0".repeat((-exp) as usize));
    } else {
        let e = exp as usize;
        if mantissa.len() <= e {
            let _ = write!(out, "{mantissa}{}", "0".repeat(e - mantissa.len()));
        } else {
            let _ = write!(out, "{}.{}", &mantissa[..e], &mantissa[e..]);
        }
    }
    out
}

/// Digits of a component printed at the absolute resolution of the whole value.
fn component(c: &Real, scale: &Real, digits: usize) -> String {
    if c.is_zero() || scale.is_zero() {
        return "0".into();
    }
    let lost = (scale.to_f64().abs().log10() - c.to_f64().abs().log10()).floor();
    let keep = digits as f64 - lost.max(0.0);
    if keep < 1.0 {
        "0".into()
    } else {
        format_real(c, keep as usize)
    }
}

fn parts(c: &Computed) -> (String, String) {
    let scale = abs(&c.value);
    (
        component(c.value.real(), &scale, c.digits),
        component(c.value.imag(), &scale, c.digits),
    )
}

fn plain_value(c: &Computed) -> String {
    let (re, im) = parts(c);
    if im == "0" {
        re
    } else if let Some(stripped) = im.strip_prefix('-') {
        format!("{re} - {stripped}i")
    } else {
        format!("{re} + {im}i")
    }
}

fn bound_text(b: &Real) -> String {
    format!("{:.3e}", b.to_f64())
}

fn json_value(c: &Computed) -> serde_json::Value {
    let (re, im) = parts(c);
    let mut v = json!({
        "value": { "re": re, "im": im },
        "digits": c.digits,
        "method": c.method,
        "terms_used": c.terms_used,
    });
    if let Some(b) = &c.bound {
        v["bound"] = json!(bound_text(b));
    }
    v
}

fn difference(a: &Computed, b: &Computed) -> Real {
    let prec = a.value.prec().0.max(b.value.prec().0);
    abs(&Complex::with_val(prec, &a.value - &b.value))
}

/// Renders a [`Computed`] in the requested format, newline-terminated.
pub fn render(c: &Computed, format: Format) -> String {
    match format {
        Format::Plain => match &c.companion {
            None => match &c.bound {
                None => format!("{}\n", plain_value(c)),
                Some(b) => format!("{} +- {}\n", plain_value(c), bound_text(b)),
            },
            Some(d) => format!(
                "accel      {}\ndirect     {}\nbound      {}\ndifference {}\n",
                plain_value(c),
                plain_value(d),
                bound_text(d.bound.as_ref().unwrap()),
                bound_text(&difference(c, d)),
            ),
        },
        Format::Json => {
            let mut v = json_value(c);
            if let Some(d) = &c.companion {
                v["direct"] = json_value(d);
                v["difference"] = json!(bound_text(&difference(c, d)));
            }
            format!("{v}\n")
        }
        Format::Csv => {
            let mut out = String::from("method,re,im,digits,terms_used,bound\n");
            for row in std::iter::once(c).chain(c.companion.as_deref()) {
                let (re, im) = parts(row);
                let b = row.bound.as_ref().map(bound_text).unwrap_or_default();
                let _ = writeln!(out, "{},{re},{im},{},{},{b}", row.method, row.digits, row.terms_used);
            }
            out
        }
    }
}

/// Runs a verification suite; the flag is true when every case passed.
pub fn verify(suite: Suite, trials: u64, config: &JobConfig) -> Result<(String, bool), CliError> {
    let ctx = config.context()?;
    let mut cases: Vec<CaseOutcome> = Vec::new();
    if matches!(suite, Suite::Lemmas | Suite::All) {
        cases.extend(lemma_suite(trials, config.seed, &ctx));
    }
    if matches!(suite, Suite::Theorems | Suite::All) {
        cases.extend(theorem_suite(trials, config.seed, &ctx));
    }
    let mut out = String::new();
    if config.format == Format::Csv {
        out.push_str("case,residual,bound,status\n");
    }
    for c in &cases {
        let status = if c.passed { "PASS" } else { "FAIL" };
        let _ = match config.format {
            Format::Plain => writeln!(
                out,
                "{} residual={:.3e} bound={:.3e} {status}",
                c.id, c.relative_residual, c.relative_bound
            ),
            Format::Json => writeln!(
                out,
                "{}",
                json!({
                    "case": c.id,
                    "residual": format!("{:.3e}", c.relative_residual),
                    "bound": format!("{:.3e}", c.relative_bound),
                    "status": status,
                })
            ),
            Format::Csv => writeln!(
                out,
                "\"{}\",{:.3e},{:.3e},{status}",
                c.id, c.relative_residual, c.relative_bound
            ),
        };
    }
    Ok((out, cases.iter().all(|c| c.passed)))
}

/// One line of `bench` output.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub method: &'static str,
    /// Terms per series (accelerated) or terms summed (direct).
    pub term_index: u64,
    /// Summands over all series.
    pub total_terms: u64,
    /// Size of the first omitted term.
    pub abs_term: f64,
    pub abs_error: f64,
}

/// Largest accelerated truncation benched.
pub const BENCH_ACCEL_MAX: u64 = 20;
/// Direct truncations benched: 1, 2, 5, 10, ..., 10^4.
pub const BENCH_DIRECT_MAX: u64 = 10_000;

fn direct_points(max: u64) -> Vec<u64> {
    let mut points = Vec::new();
    let mut decade = 1u64;
    while decade <= max {
        for k in [1, 2, 5] {
            if k * decade <= max {
                points.push(k * decade);
            }
        }
        decade *= 10;
    }
    if points.last() != Some(&max) {
        points.push(max);
    }
    points
}

/// Error of the accelerated and direct routes against a reference computed by a
/// different formula at twice the precision.
pub fn bench(target: BenchTarget, config: &JobConfig) -> Result<Vec<BenchRow>, CliError> {
    let ctx = config.context()?;
    let reference_ctx = PrecisionContext::new(2 * ctx.precision_bits()).map_err(|e| CliError::Usage(e.to_string()))?;
    let ref_pi = reference_ctx.pi();
    let bits = reference_ctx.working_bits();
    let (reference, g, s) = match target {
        BenchTarget::Zeta3 => {
            let p = AccelParams::from_alpha(Float::with_val(bits, &ref_pi / 2u32), &reference_ctx)?;
            (ramanujan_zeta(1, &p, &reference_ctx)?.value, PeriodicFunction::one(), 3)
        }
        BenchTarget::Zeta5 => {
            let p = AccelParams::from_alpha(Float::with_val(bits, &ref_pi / 3u32), &reference_ctx)?;
            (ramanujan_zeta(2, &p, &reference_ctx)?.value, PeriodicFunction::one(), 5)
        }
        BenchTarget::Catalan => (
            catalan(&reference_ctx)?.value,
            PeriodicFunction::mod4_character(),
            2,
        ),
    };
    let error = |v: &Complex| abs(&Complex::with_val(bits, v - &reference)).to_f64();

    let mut rows = Vec::new();
    let accel_default = match target {
        BenchTarget::Zeta3 => AccelParams::ramanujan_default(1, &ctx),
        BenchTarget::Zeta5 => AccelParams::ramanujan_default(2, &ctx),
        BenchTarget::Catalan => AccelParams::from_alpha(ctx.pi() / 2u32, &ctx)?,
    };
    let base = config.params(accel_default, &ctx)?;
    for n in 1..=BENCH_ACCEL_MAX {
        let params = base.clone().with_terms(n);
        let report = match target {
            BenchTarget::Zeta3 => ramanujan_zeta(1, &params, &ctx)?,
            BenchTarget::Zeta5 => ramanujan_zeta(2, &params, &ctx)?,
            BenchTarget::Catalan => l4_accel(1, &params, &ctx)?,
        };
        let abs_term = report
            .series
            .iter()
            .map(|t| t.first_discarded.to_f64())
            .fold(0.0, f64::max);
        rows.push(BenchRow {
            method: "accel",
            term_index: n,
            total_terms: report.terms_used,
            abs_term,
            abs_error: error(&report.value),
        });
    }
    let direct_max = config.n_terms.unwrap_or(BENCH_DIRECT_MAX).max(1);
    for n in direct_points(direct_max) {
        let eval = l_direct_int(s, &g, n, &ctx)?;
        let next = eval.terms_used + 1;
        let abs_term = abs(&g.value(next as i64, &ctx)).to_f64() * (next as f64).powi(-(s as i32));
        rows.push(BenchRow {
            method: "direct",
            term_index: n,
            total_terms: eval.terms_used,
            abs_term,
            abs_error: error(&eval.value),
        });
    }
    Ok(rows)
}

pub fn render_bench(rows: &[BenchRow]) -> String {
    let mut out = String::from("method,term_index,total_terms,abs_term,abs_error\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{:.6e},{:.6e}",
            r.method, r.term_index, r.total_terms, r.abs_term, r.abs_error
        );
    }
    out
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_OK,
                },
                _ => Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_USAGE,
                },
            };
        }
    };
    let failure = |e: CliError| Outcome {
        stdout: String::new(),
        stderr: format!("dirichlet: {e}\n"),
        code: e.exit_code(),
    };
    let config = &cli.config;
    match &cli.command {
        Command::Verify { suite, trials } => match verify(*suite, *trials, config) {
            Ok((stdout, true)) => Outcome {
                stdout,
                stderr: String::new(),
                code: EXIT_OK,
            },
            Ok((stdout, false)) => Outcome {
                stdout,
                stderr: "dirichlet: verification failed\n".into(),
                code: EXIT_VERIFY,
            },
            Err(e) => failure(e),
        },
        Command::Bench { target, .. } => match bench(*target, config) {
            Ok(rows) => Outcome {
                stdout: render_bench(&rows),
                stderr: String::new(),
                code: EXIT_OK,
            },
            Err(e) => failure(e),
        },
        other => match compute(other, config) {
            Ok(c) => Outcome {
                stdout: render(&c, config.format),
                stderr: String::new(),
                code: EXIT_OK,
            },
            Err(e) => failure(e),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_truncates() {
        let x = Float::with_val(64, 2.0f64 / 3.0);
        assert_eq!(format_real(&x, 5), "0.66666");
        let x = Float::with_val(64, -1234.5678f64);
        assert_eq!(format_real(&x, 6), "-1234.56");
        assert_eq!(format_real(&Float::with_val(64, 1200), 10), "1200");
        assert_eq!(format_real(&Float::with_val(64, 0.00125f64), 2), "0.0012");
        assert_eq!(format_real(&Float::with_val(64, 1e50f64), 3), "1.0e50");
    }

    #[test]
    fn direct_points_cover_the_range() {
        assert_eq!(direct_points(100), vec![1, 2, 5, 10, 20, 50, 100]);
        assert_eq!(direct_points(30), vec![1, 2, 5, 10, 20, 30]);
    }
}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
