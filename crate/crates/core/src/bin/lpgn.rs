//! Command-line interface: certified norms, the order-2 norm curve,
//! self-check suites, and the witness search, as line-delimited JSON and
//! RFC-4180 CSV.
//!
//! Exit codes: 0 success, 1 failed verification assertions, 2 usage or
//! validation errors. Data goes to stdout (or `--out FILE`); diagnostics
//! go to stderr. `LPGN_THREADS` caps the worker-thread count.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use lpgn_core::classify;
use lpgn_core::cyclic::{self, CyclicElement};
use lpgn_core::estimate::{NormBudget, NormEstimate};
use lpgn_core::exponent::Exponent;
use lpgn_core::verify::{self, SuiteOptions};
use lpgn_core::zline::{self, Kernel};

#[derive(Parser)]
#[command(
    name = "lpgn",
    version,
    about = "Certified p-norms in cyclic and integer-line convolution algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certified norm of a group-algebra element or integer-line kernel.
    Norm(NormArgs),
    /// The order-2 norm curve across exponents, against its closed form.
    DeltaCurve(DeltaCurveArgs),
    /// Seeded self-check suites; exits 1 if any assertion fails.
    Verify(VerifyArgs),
    /// Search for an element separating two exponent algebras.
    Witness(WitnessArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct NormArgs {
    /// Group for --gelfand/--coeffs input, e.g. Z4.
    #[arg(long)]
    group: Option<String>,
    /// Gelfand coordinates, e.g. "1,i,-1,-i".
    #[arg(long, conflicts_with_all = ["coeffs", "kernel"])]
    gelfand: Option<String>,
    /// Convolution coefficients, e.g. "0.5,0.5i".
    #[arg(long, conflicts_with = "kernel")]
    coeffs: Option<String>,
    /// Integer-line kernel as site:value pairs, e.g. "0:1,1:i".
    #[arg(long)]
    kernel: Option<String>,
    /// Exponent, as a decimal or an exact fraction like 4/3.
    #[arg(long)]
    p: String,
    /// Toeplitz window half-width for kernel norms.
    #[arg(long = "N", default_value_t = 64)]
    window: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random starts for the ascent stage.
    #[arg(long)]
    starts: Option<usize>,
    /// Iteration cap for the ascent stage.
    #[arg(long)]
    iters: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write data here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DeltaCurveArgs {
    /// Exponent grid, e.g. "1,8/7,4/3,3/2,2,3,4,8".
    #[arg(long, default_value = "1,8/7,4/3,3/2,2,3,4,8")]
    ts: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name (short or long form); may repeat.
    #[arg(long, conflicts_with = "all")]
    suite: Vec<String>,
    /// Run every suite.
    #[arg(long)]
    all: bool,
    /// Largest group order / matrix dimension.
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, default_value_t = 25)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Exponent grid override for the monotonicity/convexity suites.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WitnessArgs {
    /// Cyclic group, e.g. Z2.
    #[arg(long)]
    group: String,
    #[arg(long)]
    p: String,
    #[arg(long)]
    q: String,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct NormRecord<'a> {
    schema: &'a str,
    command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    kernel: Option<String>,
    p: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    window: Option<usize>,
    lower: f64,
    upper: f64,
    exact: bool,
    method_tags: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<f64>>,
}

#[derive(Serialize)]
struct CurveRecord<'a> {
    schema: &'a str,
    command: &'a str,
    t: String,
    lower: f64,
    upper: f64,
    closed_form: f64,
    abs_err: f64,
}

#[derive(Serialize)]
struct SuiteRecord<'a> {
    schema: &'a str,
    command: &'a str,
    suite: &'a str,
    pass: usize,
    fail: usize,
    failures: &'a [String],
}

#[derive(Serialize)]
struct VerifySummary<'a> {
    schema: &'a str,
    command: &'a str,
    suites: usize,
    total_pass: usize,
    total_fail: usize,
}

#[derive(Serialize)]
struct WitnessRecord<'a> {
    schema: &'a str,
    command: &'a str,
    group: String,
    p: String,
    q: String,
    gap_lower: f64,
    gelfand: Vec<[f64; 2]>,
    at_p: &'a NormEstimate,
    at_q: &'a NormEstimate,
}

const SCHEMA: &str = "1";

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Norm(args) => cmd_norm(args),
        Command::DeltaCurve(args) => cmd_delta_curve(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Witness(args) => cmd_witness(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() {
    if let Ok(v) = std::env::var("LPGN_THREADS") {
        match v.parse::<usize>() {
            Ok(k) if k >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build_global();
            }
            _ => eprintln!("warning: ignoring invalid LPGN_THREADS value {v:?}"),
        }
    }
}

type CmdResult = Result<ExitCode, Box<dyn std::error::Error>>;

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), std::io::Error> {
    match out {
        Some(path) => std::fs::write(path, content),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(content.as_bytes())
        }
    }
}

fn cmd_norm(args: NormArgs) -> CmdResult {
    let p: Exponent = args.p.parse()?;
    let mut budget = NormBudget {
        seed: args.seed,
        ..NormBudget::default()
    };
    if let Some(s) = args.starts {
        budget.starts = s;
    }
    if let Some(it) = args.iters {
        budget.max_iter = it;
    }

    let record = if let Some(kspec) = &args.kernel {
        let f = parse_kernel(kspec)?;
        let mut est = zline::norm_lambda_lower(&f, &p, args.window, &budget)?;
        est.intersect(&zline::norm_lambda_upper(&f, &p, &budget)?);
        NormRecord {
            schema: SCHEMA,
            command: "norm",
            group: Some("Z".to_string()),
            kernel: Some(kspec.clone()),
            p: p.to_string(),
            window: Some(args.window),
            lower: est.lower,
            upper: est.upper,
            exact: est.exact,
            method_tags: est.method_tags,
            witness: est.witness,
        }
    } else {
        let group = args
            .group
            .as_deref()
            .ok_or("one of --group (with --gelfand/--coeffs) or --kernel is required")?;
        let n = parse_cyclic_group(group)?;
        let x = match (&args.gelfand, &args.coeffs) {
            (Some(g), None) => CyclicElement::from_gelfand(n, parse_complex_list(g, n)?)?,
            (None, Some(c)) => CyclicElement::from_coeffs(n, parse_complex_list(c, n)?)?,
            (None, None) => return Err("provide --gelfand or --coeffs for a group element".into()),
            (Some(_), Some(_)) => unreachable!("clap forbids combining the element flags"),
        };
        let est = cyclic::norm(&x, &p, &budget)?;
        NormRecord {
            schema: SCHEMA,
            command: "norm",
            group: Some(format!("Z{n}")),
            kernel: None,
            p: p.to_string(),
            window: None,
            lower: est.lower,
            upper: est.upper,
            exact: est.exact,
            method_tags: est.method_tags,
            witness: est.witness,
        }
    };

    let content = match args.format {
        Format::Json => format!("{}\n", serde_json::to_string(&record)?),
        Format::Csv => {
            let mut s = String::from("lower,upper,exact,method_tags\r\n");
            s.push_str(&format!(
                "{},{},{},{}\r\n",
                record.lower,
                record.upper,
                record.exact,
                record.method_tags.join(";")
            ));
            s
        }
    };
    emit(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_delta_curve(args: DeltaCurveArgs) -> CmdResult {
    let ts = parse_exponent_list(&args.ts)?;
    for t in &ts {
        if t.is_infinite() {
            return Err("the curve is defined for finite exponents only".into());
        }
    }
    let budget = NormBudget {
        seed: args.seed,
        ..NormBudget::default()
    };
    let curve = cyclic::delta_curve(&ts, &budget)?;

    let mut content = String::new();
    match args.format {
        Format::Csv => {
            content.push_str("t,lower,upper,closed_form,abs_err\r\n");
            for (t, est) in &curve {
                let cf = cyclic::delta_closed_form(t);
                let abs_err = (est.lower - cf).max(cf - est.upper).max(0.0);
                content.push_str(&format!(
                    "{},{},{},{},{}\r\n",
                    t, est.lower, est.upper, cf, abs_err
                ));
            }
        }
        Format::Json => {
            for (t, est) in &curve {
                let cf = cyclic::delta_closed_form(t);
                let abs_err = (est.lower - cf).max(cf - est.upper).max(0.0);
                let row = CurveRecord {
                    schema: SCHEMA,
                    command: "delta-curve",
                    t: t.to_string(),
                    lower: est.lower,
                    upper: est.upper,
                    closed_form: cf,
                    abs_err,
                };
                content.push_str(&serde_json::to_string(&row)?);
                content.push('\n');
            }
        }
    }
    emit(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    if !args.all && args.suite.is_empty() {
        return Err("pass --suite NAME (repeatable) or --all".into());
    }
    let mut opts = SuiteOptions {
        n: args.n,
        trials: args.trials,
        seed: args.seed,
        ..SuiteOptions::default()
    };
    if let Some(g) = &args.grid {
        opts.grid = parse_exponent_list(g)?;
    }

    let reports = if args.all {
        verify::run_all(&opts)?
    } else {
        args.suite
            .iter()
            .map(|s| verify::run_suite(s, &opts))
            .collect::<Result<Vec<_>, _>>()?
    };

    let mut content = String::new();
    let mut total_pass = 0;
    let mut total_fail = 0;
    for r in &reports {
        total_pass += r.pass;
        total_fail += r.fail;
        let rec = SuiteRecord {
            schema: SCHEMA,
            command: "verify",
            suite: &r.name,
            pass: r.pass,
            fail: r.fail,
            failures: &r.failures,
        };
        content.push_str(&serde_json::to_string(&rec)?);
        content.push('\n');
    }
    let summary = VerifySummary {
        schema: SCHEMA,
        command: "verify",
        suites: reports.len(),
        total_pass,
        total_fail,
    };
    content.push_str(&serde_json::to_string(&summary)?);
    content.push('\n');
    emit(&args.out, &content)?;

    if total_fail > 0 {
        eprintln!("verify: {total_fail} assertion(s) failed");
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn cmd_witness(args: WitnessArgs) -> CmdResult {
    let n = parse_cyclic_group(&args.group)?;
    if n < 2 {
        return Err("witness search needs a cyclic group of order at least 2".into());
    }
    let p: Exponent = args.p.parse()?;
    let q: Exponent = args.q.parse()?;
    let budget = NormBudget::default();
    let w = classify::witness_search(n as u64, &p, &q, args.trials, args.seed, &budget)?;

    let rec = WitnessRecord {
        schema: SCHEMA,
        command: "witness",
        group: w.group.to_string(),
        p: p.to_string(),
        q: q.to_string(),
        gap_lower: w.gap_lower,
        gelfand: w.element.gelfand().iter().map(|z| [z.re, z.im]).collect(),
        at_p: &w.at_p,
        at_q: &w.at_q,
    };
    let content = format!("{}\n", serde_json::to_string(&rec)?);
    emit(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

/// Parses "Zn" (cyclic of order n) or "trivial" (order 1).
fn parse_cyclic_group(s: &str) -> Result<usize, String> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("trivial") {
        return Ok(1);
    }
    let rest = t
        .strip_prefix('Z')
        .or_else(|| t.strip_prefix('z'))
        .ok_or_else(|| format!("unrecognized group {t:?}; expected Zn or trivial"))?;
    let n: usize = rest
        .parse()
        .map_err(|_| format!("unrecognized group order in {t:?}"))?;
    if n == 0 {
        return Err("group order must be positive".into());
    }
    Ok(n)
}

/// Parses a complex literal: "1", "-2.5", "i", "-i", "1+i", "0.5-0.25i",
/// "2i". The imaginary unit is a trailing `i`.
fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    let bad = |s: &str| format!("cannot parse complex literal {s:?}");

    // Split at the last '+'/'-' that is not leading and not part of an
    // exponent like "1e-3".
    let bytes = t.as_bytes();
    let mut split = None;
    for idx in (1..bytes.len()).rev() {
        let c = bytes[idx] as char;
        if (c == '+' || c == '-') && !matches!(bytes[idx - 1] as char, 'e' | 'E') {
            split = Some(idx);
            break;
        }
    }

    let parse_imag = |part: &str| -> Result<f64, String> {
        let body = part.strip_suffix('i').ok_or_else(|| bad(part))?;
        match body {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => body.parse::<f64>().map_err(|_| bad(part)),
        }
    };

    if t.ends_with('i') {
        match split {
            Some(idx) => {
                let re: f64 = t[..idx].parse().map_err(|_| bad(&t))?;
                let im = parse_imag(&t[idx..])?;
                Ok(Complex64::new(re, im))
            }
            None => Ok(Complex64::new(0.0, parse_imag(&t)?)),
        }
    } else {
        let re: f64 = t.parse().map_err(|_| bad(&t))?;
        Ok(Complex64::new(re, 0.0))
    }
}

fn parse_complex_list(s: &str, expected: usize) -> Result<Vec<Complex64>, String> {
    let items: Vec<Complex64> = s
        .split(',')
        .map(parse_complex)
        .collect::<Result<_, _>>()?;
    if items.len() != expected {
        return Err(format!(
            "expected {expected} entries for this group, got {}",
            items.len()
        ));
    }
    Ok(items)
}

/// Parses "0:1,1:i,-2:0.5-0.5i" into a kernel.
fn parse_kernel(s: &str) -> Result<Kernel, Box<dyn std::error::Error>> {
    let mut entries = Vec::new();
    for item in s.split(',') {
        let (site, value) = item
            .split_once(':')
            .ok_or_else(|| format!("kernel entry {item:?} is not site:value"))?;
        let k: i64 = site
            .trim()
            .parse()
            .map_err(|_| format!("bad kernel site {site:?}"))?;
        entries.push((k, parse_complex(value)?));
    }
    Ok(Kernel::from_entries(&entries)?)
}

fn parse_exponent_list(s: &str) -> Result<Vec<Exponent>, Box<dyn std::error::Error>> {
    let ts: Vec<Exponent> = s
        .split(',')
        .map(|t| t.trim().parse::<Exponent>())
        .collect::<Result<_, _>>()?;
    if ts.is_empty() {
        return Err("empty exponent list".into());
    }
    Ok(ts)
}
