//! The `tanglekit` command line.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 for usage,
//! parse and I/O errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::Value as Json;

use crate::invariants::{full_report, InvariantReport, Value};
use crate::state::{
    named_state, norm_deviation, random_state, NamedState, PureState, NORM_TOLERANCE,
};
use crate::verify::{
    all_passed, benchmark_suite, identity_suite, lu_invariance_suite, CheckResult,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "tanglekit",
    version,
    about = "Entanglement invariants of N-qubit pure states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a named or random state as a JSON state file.
    Generate(GenerateArgs),
    /// Print invariants and monotones of a state.
    Compute(ComputeArgs),
    /// Run the randomized and benchmark checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// ghz, w, bell, chi, basis:IDX or random.
    pub name: String,
    /// Number of qubits; bell and chi imply 2 and 4.
    #[arg(value_name = "N")]
    pub qubits: Option<usize>,
    #[arg(long = "n", conflicts_with = "qubits")]
    pub n: Option<usize>,
    #[arg(long, env = "TANGLEKIT_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["state", "name"]))]
pub struct ComputeArgs {
    /// JSON state file.
    #[arg(long)]
    pub state: Option<PathBuf>,
    /// Named generator (as for `generate`).
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long = "n")]
    pub n: Option<usize>,
    #[arg(long, env = "TANGLEKIT_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Report keys to print.
    #[arg(long, num_args = 1.., value_delimiter = ',')]
    pub select: Vec<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Qubit count for the randomized suites; all of 2..=6 when omitted.
    #[arg(long = "n")]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, env = "TANGLEKIT_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Run the benchmark table. Alone, runs only the benchmarks.
    #[arg(long)]
    pub benchmarks: bool,
    /// Override every check's tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub json: bool,
}

/// Parses a state file body: `{"n": int, "amplitudes": [[re, im], ...]}`.
/// Returns the normalized state and the input's norm deviation.
pub fn parse_state_json(text: &str) -> Result<(PureState, f64), String> {
    let root: Json =
        serde_json::from_str(text).map_err(|e| format!("state file is not valid JSON: {e}"))?;
    let obj = root
        .as_object()
        .ok_or("state file: expected a JSON object")?;
    let n = obj
        .get("n")
        .ok_or("state file: missing field `n`")?
        .as_u64()
        .ok_or("state file: field `n` must be a non-negative integer")? as usize;
    let list = obj
        .get("amplitudes")
        .ok_or("state file: missing field `amplitudes`")?
        .as_array()
        .ok_or("state file: field `amplitudes` must be an array")?;
    let amp = list
        .iter()
        .enumerate()
        .map(|(k, entry)| match entry.as_array().map(Vec::as_slice) {
            Some([re, im]) => match (re.as_f64(), im.as_f64()) {
                (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
                _ => Err(format!(
                    "state file: field `amplitudes[{k}]` must hold two numbers"
                )),
            },
            _ => Err(format!(
                "state file: field `amplitudes[{k}]` must be a [re, im] pair"
            )),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let deviation = norm_deviation(&amp);
    if deviation > NORM_TOLERANCE {
        eprintln!("warning: state norm deviates from 1 by {deviation:e}; amplitudes renormalized");
    }
    let state =
        PureState::new(n, amp).map_err(|e| format!("state file: field `amplitudes`: {e}"))?;
    Ok((state, deviation))
}

pub fn read_state_file(path: &Path) -> Result<(PureState, f64), String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_state_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn state_to_json(state: &PureState) -> String {
    let amplitudes: Vec<[f64; 2]> = state.amplitudes().iter().map(|a| [a.re, a.im]).collect();
    let body = serde_json::json!({ "n": state.n(), "amplitudes": amplitudes });
    format!("{body}\n")
}

/// Named generator or `random`. `n` may be omitted for bell and chi.
pub fn build_state(name: &str, n: Option<usize>, seed: u64) -> Result<PureState, String> {
    if name.eq_ignore_ascii_case("random") {
        let n = n.ok_or("random states need a qubit count")?;
        return random_state(n, seed).map_err(|e| e.to_string());
    }
    let named: NamedState = name.parse().map_err(|e: crate::Error| e.to_string())?;
    let n = match (n, named) {
        (Some(n), _) => n,
        (None, NamedState::Bell) => 2,
        (None, NamedState::Chi) => 4,
        (None, _) => return Err(format!("state `{name}` needs a qubit count")),
    };
    named_state(named, n).map_err(|e| e.to_string())
}

/// Rounds to 12 significant digits; magnitudes below 1e-12 print as zero.
pub fn format_real(x: f64) -> String {
    if x.abs() < 1e-12 {
        return "0.0".to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    format!("{rounded:?}")
}

pub fn format_value(v: &Value) -> String {
    match v {
        Value::Real(x) => format_real(*x),
        Value::Complex(z) => format!("({}, {})", format_real(z.re), format_real(z.im)),
    }
}

fn select_entries(report: &mut InvariantReport, select: &[String]) -> Result<(), String> {
    if select.is_empty() {
        return Ok(());
    }
    if let Some(missing) = select.iter().find(|k| !report.entries.contains_key(*k)) {
        let known: Vec<&str> = report.entries.keys().map(String::as_str).collect();
        return Err(format!(
            "unknown report key `{missing}`; available: {}",
            known.join(", ")
        ));
    }
    report.entries.retain(|k, _| select.contains(k));
    report.font_census.clear();
    Ok(())
}

fn generate(args: &GenerateArgs, out: &mut dyn Write) -> Result<i32, String> {
    let state = build_state(&args.name, args.qubits.or(args.n), args.seed)?;
    let body = state_to_json(&state);
    match &args.out {
        Some(path) => fs::write(path, body).map_err(|e| format!("{}: {e}", path.display()))?,
        None => out.write_all(body.as_bytes()).map_err(|e| e.to_string())?,
    }
    Ok(EXIT_OK)
}

fn compute(args: &ComputeArgs, out: &mut dyn Write) -> Result<i32, String> {
    let ((state, deviation), source) = match (&args.state, &args.name) {
        (Some(path), _) => (read_state_file(path)?, path.display().to_string()),
        (None, Some(name)) => {
            let state = build_state(name, args.n, args.seed)?;
            let deviation = norm_deviation(state.amplitudes());
            ((state, deviation), name.clone())
        }
        (None, None) => return Err("one of --state or --name is required".to_string()),
    };
    let mut report = full_report(&state)
        .map_err(|e| e.to_string())?
        .with_source(source, deviation);
    select_entries(&mut report, &args.select)?;
    let text = if args.json {
        serde_json::to_string_pretty(&report).map_err(|e| e.to_string())? + "\n"
    } else {
        let mut s = String::new();
        if args.select.is_empty() {
            s += &format!(
                "# {} qubits, source {}\n",
                report.state_meta.n, report.state_meta.source
            );
        }
        let width = report.entries.keys().map(String::len).max().unwrap_or(0);
        for (key, entry) in &report.entries {
            s += &format!("{key:<width$}  {}\n", format_value(&entry.value));
        }
        for (key, count) in &report.font_census {
            s += &format!("fonts {key}  {count}\n");
        }
        s
    };
    out.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, String> {
    let mut results: Vec<CheckResult> = Vec::new();
    let sizes: Vec<usize> = match (args.n, args.benchmarks) {
        (Some(n), _) => vec![n],
        (None, true) => vec![],
        (None, false) => (2..=6).collect(),
    };
    for n in sizes {
        results.extend(lu_invariance_suite(n, args.trials, args.seed).map_err(|e| e.to_string())?);
        results.extend(identity_suite(n, args.trials, args.seed).map_err(|e| e.to_string())?);
    }
    if args.benchmarks || args.n.is_none() {
        results.extend(benchmark_suite().map_err(|e| e.to_string())?);
    }
    if let Some(tol) = args.tol {
        results = results.into_iter().map(|r| r.with_tolerance(tol)).collect();
    }
    let text = if args.json {
        serde_json::to_string_pretty(&results).map_err(|e| e.to_string())? + "\n"
    } else {
        let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
        let mut s = String::new();
        for r in &results {
            s += &format!(
                "{}  {:<width$}  trials={:<4} max_dev={:.3e} tol={:.1e}\n",
                if r.passed { "PASS" } else { "FAIL" },
                r.name,
                r.trials,
                r.max_deviation,
                r.tolerance,
            );
        }
        let failed = results.iter().filter(|r| !r.passed).count();
        s += &format!("{} checks, {failed} failed\n", results.len());
        s
    };
    out.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
    Ok(if all_passed(&results) {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, String> {
    match &cli.command {
        Command::Generate(args) => generate(args, out),
        Command::Compute(args) => compute(args, out),
        Command::Verify(args) => verify(args, out),
    }
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}
