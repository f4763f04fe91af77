//! The `shikit` command line.
//!
//! stdout carries data (CSV or JSON), stderr diagnostics. Exit codes: 0 on
//! success (including verification runs whose only problems are
//! inconclusive cases), 1 when a verified claim fails or an `eval` row
//! errors, 2 on invalid arguments.

mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{self, BoundKind};
use crate::error::Error;
use crate::poly;
use crate::shi::{self, EvalConfig, DEFAULT_MAX_TERMS};
use crate::verify::{self, GridDefaults, Status};
use format::{csv_field, num};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable overriding the series term limit.
pub const MAX_TERMS_ENV: &str = "SHIKIT_MAX_TERMS";

#[derive(Debug, Parser)]
#[command(name = "shikit", version, about = "Hyperbolic sine integral toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate sinhc, Shi or a derivative of Shi (CSV).
    Eval(EvalArgs),
    /// Print the closed-form polynomials of Shi^(m).
    Poly(PolyArgs),
    /// Tabulate a bound family against the true function (CSV).
    Bounds(BoundsArgs),
    /// Run inequality cases and emit a JSON report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Function {
    Shi,
    Sinhc,
    #[value(name = "shi_deriv", alias = "shi-deriv")]
    ShiDeriv,
}

#[derive(Debug, Args)]
struct RangeArgs {
    /// Points as start:stop:count, endpoints inclusive.
    #[arg(long, value_parser = parse_range)]
    range: Option<Range>,
    /// Space range points logarithmically.
    #[arg(long, requires = "range")]
    log: bool,
}

#[derive(Debug, Args)]
struct EvalArgs {
    function: Function,
    /// Arguments to evaluate at.
    #[arg(allow_negative_numbers = true)]
    z: Vec<f64>,
    /// Derivative order for shi_deriv.
    #[arg(long)]
    m: Option<u32>,
    #[command(flatten)]
    range: RangeArgs,
    /// Relative tolerance of the series.
    #[arg(long)]
    tol: Option<f64>,
    /// Series term cap; overrides SHIKIT_MAX_TERMS.
    #[arg(long)]
    max_terms: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolyFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct PolyArgs {
    m: u32,
    #[arg(long, value_enum, default_value_t = PolyFormat::Text)]
    format: PolyFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Tanh,
    Cosh,
    Shi,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    target: Target,
    /// Comma-separated tanh bound orders (default 3..=10).
    #[arg(long, value_delimiter = ',')]
    orders: Vec<u32>,
    #[command(flatten)]
    range: RangeArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Case ids, or `all`.
    #[arg(default_value = "all")]
    cases: Vec<String>,
    #[arg(long, default_value_t = GridDefaults::default().seed)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Points per axis for one-variable cases.
    #[arg(long)]
    points_1d: Option<usize>,
    /// Points per axis for two-variable cases.
    #[arg(long)]
    points_2d: Option<usize>,
    /// Points per u/v axis for three-variable cases.
    #[arg(long)]
    points_3d: Option<usize>,
    /// Points of the exponent axis for three-variable cases.
    #[arg(long)]
    points_k: Option<usize>,
    /// Extra random points for multi-variable cases.
    #[arg(long)]
    random_points: Option<usize>,
    /// Series term cap; overrides SHIKIT_MAX_TERMS.
    #[arg(long)]
    max_terms: Option<usize>,
    /// List the catalog instead of verifying.
    #[arg(long)]
    list: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Range {
    start: f64,
    stop: f64,
    count: usize,
}

fn parse_range(s: &str) -> Result<Range, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts[..] else {
        return Err(format!("expected start:stop:count, got `{s}`"));
    };
    let start: f64 = a.parse().map_err(|_| format!("bad start `{a}`"))?;
    let stop: f64 = b.parse().map_err(|_| format!("bad stop `{b}`"))?;
    let count: usize = n.parse().map_err(|_| format!("bad count `{n}`"))?;
    if !(start.is_finite() && stop.is_finite()) {
        return Err("range endpoints must be finite".into());
    }
    if count == 0 {
        return Err("range count must be at least 1".into());
    }
    if count == 1 && start != stop {
        return Err("a single-point range needs start == stop".into());
    }
    Ok(Range { start, stop, count })
}

impl RangeArgs {
    fn points(&self) -> Result<Vec<f64>, String> {
        let Some(r) = self.range else { return Ok(Vec::new()) };
        if r.count == 1 {
            return Ok(vec![r.start]);
        }
        if self.log && !(r.start > 0.0 && r.stop > 0.0) {
            return Err("--log needs a positive range".into());
        }
        let sampling = if self.log { verify::Sampling::Log } else { verify::Sampling::Linear };
        let (lo, hi) = (r.start.min(r.stop), r.start.max(r.stop));
        let mut pts = verify::Axis { lo, hi, count: r.count, sampling }.points();
        if r.start > r.stop {
            pts.reverse();
        }
        Ok(pts)
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn usage(&mut self, msg: impl std::fmt::Display) -> i32 {
        let _ = writeln!(self.err, "error: {msg}");
        EXIT_USAGE
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return e.exit_code();
        }
    };
    let mut io = Io { out, err };
    let code = match cli.command {
        Command::Eval(a) => cmd_eval(a, &mut io),
        Command::Poly(a) => cmd_poly(a, &mut io),
        Command::Bounds(a) => cmd_bounds(a, &mut io),
        Command::Verify(a) => cmd_verify(a, &mut io),
    };
    match code {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            EXIT_FAIL
        }
    }
}

/// Entry point for the binary.
pub fn main_entry() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let mut err = stderr.lock();
    let code = run(std::env::args_os(), &mut out, &mut err);
    if out.flush().is_err() {
        return EXIT_FAIL;
    }
    code
}

fn eval_config(tol: Option<f64>, max_terms: Option<usize>) -> Result<EvalConfig, String> {
    let mut cfg = EvalConfig::default();
    if let Some(t) = tol {
        cfg.rel_tol = t;
    }
    cfg.max_terms = match max_terms {
        Some(n) => n,
        None => match std::env::var(MAX_TERMS_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| format!("{MAX_TERMS_ENV}=`{v}` is not a term count"))?,
            Err(_) => DEFAULT_MAX_TERMS,
        },
    };
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

#[derive(Serialize)]
struct EvalRow {
    z: f64,
    value: Option<f64>,
    abs_err: Option<f64>,
    method: Option<&'static str>,
    error: Option<String>,
}

fn cmd_eval(a: EvalArgs, io: &mut Io) -> std::io::Result<i32> {
    let cfg = match eval_config(a.tol, a.max_terms) {
        Ok(c) => c,
        Err(e) => return Ok(io.usage(e)),
    };
    let m = match (a.function, a.m) {
        (Function::ShiDeriv, None) => return Ok(io.usage("shi_deriv needs --m")),
        (Function::ShiDeriv, Some(m)) => m,
        (_, Some(_)) => return Ok(io.usage("--m only applies to shi_deriv")),
        (_, None) => 0,
    };
    let mut zs = a.z.clone();
    match a.range.points() {
        Ok(p) => zs.extend(p),
        Err(e) => return Ok(io.usage(e)),
    }
    if zs.is_empty() {
        return Ok(io.usage("no arguments: give z values or --range"));
    }

    let rows: Vec<EvalRow> = zs
        .iter()
        .map(|&z| {
            let r = match a.function {
                Function::Sinhc => shi::sinhc(z).map(|v| (v, v.abs() * f64::EPSILON, "direct")),
                _ => shi::shi_derivative(m, z, &cfg).map(|e| (e.value, e.abs_err_estimate, e.method.as_str())),
            };
            match r {
                Ok((v, err, method)) => {
                    EvalRow { z, value: Some(v), abs_err: Some(err), method: Some(method), error: None }
                }
                Err(e) => EvalRow { z, value: None, abs_err: None, method: None, error: Some(e.to_string()) },
            }
        })
        .collect();
    let failed = rows.iter().any(|r| r.error.is_some());

    match a.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *io.out, &rows)?;
            writeln!(io.out)?;
        }
        Format::Csv => {
            writeln!(io.out, "z,value,abs_err,method,error")?;
            for r in &rows {
                writeln!(
                    io.out,
                    "{},{},{},{},{}",
                    num(r.z),
                    r.value.map(num).unwrap_or_default(),
                    r.abs_err.map(num).unwrap_or_default(),
                    r.method.unwrap_or(""),
                    r.error.as_deref().map(csv_field).unwrap_or_default(),
                )?;
            }
        }
    }
    if failed {
        writeln!(io.err, "warning: some rows failed to evaluate")?;
        return Ok(EXIT_FAIL);
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct PolyDoc<'a> {
    #[serde(flatten)]
    form: &'a poly::DerivClosedForm,
    formula: String,
}

fn cmd_poly(a: PolyArgs, io: &mut Io) -> std::io::Result<i32> {
    let cf = match poly::derivative_polynomials(a.m) {
        Ok(cf) => cf,
        Err(e) => return Ok(io.usage(e)),
    };
    match a.format {
        PolyFormat::Text => {
            writeln!(io.out, "m = {}", cf.order)?;
            writeln!(io.out, "cosh_poly = {}", cf.cosh_poly.to_list_string())?;
            writeln!(io.out, "sinh_poly = {}", cf.sinh_poly.to_list_string())?;
            writeln!(io.out, "{}", cf.formula())?;
        }
        PolyFormat::Json => {
            serde_json::to_writer_pretty(&mut *io.out, &PolyDoc { form: &cf, formula: cf.formula() })?;
            writeln!(io.out)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_bounds(a: BoundsArgs, io: &mut Io) -> std::io::Result<i32> {
    if a.range.range.is_none() {
        return Ok(io.usage("bounds needs --range start:stop:count"));
    }
    let zs = match a.range.points() {
        Ok(p) => p,
        Err(e) => return Ok(io.usage(e)),
    };
    if let Some(z) = zs.iter().find(|z| z.is_nan() || **z <= 0.0) {
        return Ok(io.usage(format!("bounds need z > 0, got {z}")));
    }
    match a.target {
        Target::Tanh => {
            let orders = if a.orders.is_empty() { (3..=10).collect() } else { a.orders.clone() };
            let mut family = Vec::new();
            for m in orders {
                match bounds::tanh_bound(m) {
                    Ok(b) => family.push(b),
                    Err(e) => return Ok(io.usage(e)),
                }
            }
            let mut header = vec!["z".to_string(), "true_value".to_string()];
            for b in &family {
                let side = if b.kind == BoundKind::Lower { "lo" } else { "hi" };
                header.push(format!("bound_m_{}_{side}", b.order));
            }
            header.extend(family.iter().map(|b| format!("abs_gap_m_{}", b.order)));
            writeln!(io.out, "{}", header.join(","))?;
            for &z in &zs {
                let t = z.tanh();
                let values: Vec<f64> = family
                    .iter()
                    .map(|b| bounds::tanh_bound_eval(b, z))
                    .collect::<Result<_, Error>>()
                    .expect("z > 0 and the order are validated");
                let mut row = vec![num(z), num(t)];
                row.extend(values.iter().map(|&v| num(v)));
                row.extend(values.iter().map(|&v| num((t - v).abs())));
                writeln!(io.out, "{}", row.join(","))?;
            }
        }
        Target::Cosh | Target::Shi => {
            if !a.orders.is_empty() {
                return Ok(io.usage("--orders only applies to tanh"));
            }
            let cfg = match eval_config(None, None) {
                Ok(c) => c,
                Err(e) => return Ok(io.usage(e)),
            };
            let mut rows = Vec::with_capacity(zs.len());
            for &z in &zs {
                let r = if a.target == Target::Cosh {
                    bounds::cosh_bounds(z).map(|env| (z.cosh(), env))
                } else {
                    bounds::shi_envelope(z).and_then(|env| Ok((shi::shi(z, &cfg)?.value, env)))
                };
                match r {
                    Ok(r) => rows.push((z, r)),
                    Err(e) => return Ok(io.usage(e)),
                }
            }
            writeln!(io.out, "z,true_value,bound_lo,bound_hi,abs_gap_lo,abs_gap_hi")?;
            for (z, (t, env)) in rows {
                writeln!(
                    io.out,
                    "{},{},{},{},{},{}",
                    num(z),
                    num(t),
                    num(env.lower),
                    num(env.upper),
                    num((t - env.lower).abs()),
                    num((env.upper - t).abs()),
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: VerifyArgs, io: &mut Io) -> std::io::Result<i32> {
    if a.list {
        writeln!(io.out, "id,arity,strict,statement")?;
        for c in verify::catalog() {
            writeln!(io.out, "{},{},{},{}", c.id, c.arity, c.strict, csv_field(c.statement))?;
        }
        return Ok(EXIT_OK);
    }
    let cfg = match eval_config(None, a.max_terms) {
        Ok(c) => c,
        Err(e) => return Ok(io.usage(e)),
    };
    let base = GridDefaults::default();
    let grid = GridDefaults {
        points_1d: a.points_1d.unwrap_or(base.points_1d),
        points_2d: a.points_2d.unwrap_or(base.points_2d),
        points_3d: a.points_3d.unwrap_or(base.points_3d),
        points_k: a.points_k.unwrap_or(base.points_k),
        random_points: a.random_points.unwrap_or(base.random_points),
        seed: a.seed,
    };
    let doc = match verify::verify_document(&a.cases, &grid, &cfg) {
        Ok(d) => d,
        Err(e @ (Error::UnknownCase(_) | Error::InvalidGrid(_) | Error::InvalidConfig(_))) => {
            return Ok(io.usage(e))
        }
        Err(e) => return Err(std::io::Error::other(e.to_string())),
    };
    let json = doc.to_json();
    match &a.output {
        Some(path) => std::fs::write(path, json)?,
        None => io.out.write_all(json.as_bytes())?,
    }

    for r in &doc.reports {
        if r.status != Status::Pass {
            writeln!(io.err, "{}: {}", r.case_id, r.status.as_str())?;
        }
    }
    let s = &doc.summary;
    writeln!(io.err, "{} cases: {} pass, {} fail, {} inconclusive", s.total, s.pass, s.fail, s.inconclusive)?;
    if s.fail > 0 {
        return Ok(EXIT_FAIL);
    }
    if s.inconclusive > 0 {
        writeln!(io.err, "warning: {} inconclusive case(s)", s.inconclusive)?;
    }
    Ok(EXIT_OK)
}
