//! The `cyclosum` command line: `compute`, `verify`, `sweep` and `props`.
//!
//! Exit codes: 0 when everything passes, 1 when a congruence or identity
//! fails, 2 on usage or validation errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::congruence::{
    verify_field, verify_propositions, CongruenceError, CongruenceReport, OutputFormat, VerificationContext, CSV_HEADER,
};
use crate::ff::{is_prime, MAX_Q};
use crate::jacobi::Convention;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Overrides `--cache-dir` when set.
pub const CACHE_ENV: &str = "CYCLOSUM_CACHE";

#[derive(Debug, Parser)]
#[command(name = "cyclosum", version, about = "Exact Jacobi sums of order dividing 2l^2 and their lambda-adic congruences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute one Jacobi sum J_e(i,j) exactly.
    Compute(ComputeArgs),
    /// Verify every congruence for J_{2l^2}(1,n) and J_{l^2}(1,n) over one field.
    Verify(VerifyArgs),
    /// Verify every q = p^r ≡ 1 (mod 2l^2) in a range.
    Sweep(SweepArgs),
    /// Check the exact Jacobi-sum identities exhaustively over one field.
    Props(FieldArgs),
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Characteristic of the field.
    #[arg(long)]
    pub p: u64,
    /// Extension degree.
    #[arg(long, default_value_t = 1)]
    pub r: u32,
    /// Odd prime l.
    #[arg(long)]
    pub l: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Directory for discrete-log table caches.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Character order e, a divisor of 2l^2.
    #[arg(long)]
    pub order: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub i: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub j: i64,
    /// Use the kernel (v, 1-v) instead of (v, v+1).
    #[arg(long)]
    pub reflected: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Record wall time in the report (makes output run-dependent).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub l: u64,
    #[arg(long)]
    pub q_min: u64,
    #[arg(long)]
    pub q_max: u64,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Include prime powers p^r with r <= 3.
    #[arg(long)]
    pub powers: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

/// Result of one command: exit code plus what goes to stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {}\n", msg.into()) }
    }
}

fn cache_dir(flag: &Option<PathBuf>) -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).map(PathBuf::from).or_else(|| flag.clone())
}

fn context(args: &FieldArgs) -> Result<VerificationContext, CongruenceError> {
    VerificationContext::with_cache(args.p, args.r, args.l, cache_dir(&args.cache_dir).as_deref())
}

fn pass_code(pass: bool) -> i32 {
    if pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

pub fn cmd_compute(args: &ComputeArgs) -> Outcome {
    let ctx = match context(&args.field) {
        Ok(c) => c,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let sums = ctx.sums();
    let result = if args.reflected {
        sums.jacobi_sum_reflected(args.order, args.i, args.j)
    } else {
        sums.jacobi_sum(args.order, args.i, args.j)
    };
    let jv = match result {
        Ok(v) => v,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let f = ctx.field();
    let coeffs: Vec<String> = jv.value.coeffs().iter().map(ToString::to_string).collect();
    let (pi, pj) = (jv.params.i(), jv.params.j());
    let kernel = match jv.convention {
        Convention::Shifted => "shifted",
        Convention::Reflected => "reflected",
    };
    let out = match args.field.format {
        OutputFormat::Text => {
            let name = match jv.convention {
                Convention::Shifted => format!("J_{}({pi},{pj})", args.order),
                Convention::Reflected => format!("J_{}(chi^{pi},chi^{pj})", args.order),
            };
            format!(
                "{name} over F_{} (p = {}, r = {}, gamma = {}), z = zeta_{}\ncoefficients: [{}]\nvalue: {}\n",
                f.q(),
                f.p(),
                f.r(),
                f.gamma(),
                f.l() * f.l(),
                coeffs.join(", "),
                jv.value
            )
        }
        OutputFormat::Json => {
            let nums: Vec<Value> = jv
                .value
                .coeffs()
                .iter()
                .map(|c| i64::try_from(c).map(Value::from).unwrap_or_else(|_| Value::from(c.to_string())))
                .collect();
            let doc = json!({
                "p": f.p(), "r": f.r(), "q": f.q(), "l": f.l(), "gamma": f.gamma().encoding(),
                "order": args.order, "i": pi, "j": pj, "convention": kernel,
                "coefficients": nums, "value": jv.value.to_string(),
            });
            serde_json::to_string_pretty(&doc).unwrap() + "\n"
        }
        OutputFormat::Csv => {
            let mut s = String::from("index,coefficient\n");
            for (i, c) in coeffs.iter().enumerate() {
                writeln!(s, "{i},{c}").unwrap();
            }
            s
        }
    };
    Outcome::ok(EXIT_PASS, out)
}

pub fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let start = Instant::now();
    let ctx = match context(&args.field) {
        Ok(c) => c,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let mut report = verify_field(&ctx);
    if args.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Outcome::ok(pass_code(report.all_pass), report.render(args.field.format))
}

pub fn cmd_props(args: &FieldArgs) -> Outcome {
    let ctx = match context(args) {
        Ok(c) => c,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let report = verify_propositions(&ctx);
    Outcome::ok(pass_code(report.all_pass), report.render(args.format))
}

/// `(p, r)` with `q = p^r ≡ 1 (mod 2l²)` in `[q_min, q_max]`, ordered by `q`.
pub fn sweep_fields(l: u64, q_min: u64, q_max: u64, powers: bool) -> Vec<(u64, u32)> {
    let modulus = 2 * l * l;
    let max_r = if powers { 3 } else { 1 };
    let mut out = Vec::new();
    for p in (3..=q_max).filter(|&p| p != l && is_prime(p)) {
        let mut q = 1u64;
        for r in 1..=max_r {
            q = match q.checked_mul(p) {
                Some(q) if q <= q_max => q,
                _ => break,
            };
            if q >= q_min && q % modulus == 1 {
                out.push((p, r));
            }
        }
    }
    out.sort_by_key(|&(p, r)| p.pow(r));
    out
}

pub fn cmd_sweep(args: &SweepArgs) -> Outcome {
    if args.l < 3 || !is_prime(args.l) {
        return Outcome::usage(format!("l = {} must be an odd prime", args.l));
    }
    if args.q_min > args.q_max {
        return Outcome::usage(format!("q-min {} exceeds q-max {}", args.q_min, args.q_max));
    }
    if args.q_max > MAX_Q {
        return Outcome::usage(format!("q-max {} exceeds the supported bound {MAX_Q}", args.q_max));
    }
    if args.jobs == 0 {
        return Outcome::usage("jobs must be at least 1");
    }
    let fields = sweep_fields(args.l, args.q_min, args.q_max, args.powers);
    if fields.is_empty() {
        return Outcome::usage(format!(
            "empty range: no q ≡ 1 (mod {}) in [{}, {}]",
            2 * args.l * args.l,
            args.q_min,
            args.q_max
        ));
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(args.jobs).build() {
        Ok(p) => p,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let cache = cache_dir(&args.cache_dir);
    let reports: Result<Vec<CongruenceReport>, CongruenceError> = pool.install(|| {
        fields
            .par_iter()
            .map(|&(p, r)| {
                let ctx = VerificationContext::with_cache(p, r, args.l, cache.as_deref())?;
                Ok(verify_field(&ctx))
            })
            .collect()
    });
    let reports = match reports {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e.to_string()),
    };
    let all_pass = reports.iter().all(|r| r.all_pass);
    Outcome::ok(pass_code(all_pass), render_sweep(args, &reports, all_pass))
}

fn render_sweep(args: &SweepArgs, reports: &[CongruenceReport], all_pass: bool) -> String {
    match args.format {
        OutputFormat::Text => {
            let mut s = format!("sweep l = {}, q in [{}, {}]\n", args.l, args.q_min, args.q_max);
            writeln!(s, "  {:>8} {:>6} {:>2} {:>8} {:>8} {:>6} {:>9}  result", "q", "p", "r", "gamma", "w", "cases", "failures").unwrap();
            for r in reports {
                let total = r.cases.len() + r.order_l2.len();
                writeln!(
                    s,
                    "  {:>8} {:>6} {:>2} {:>8} {:>8} {:>6} {:>9}  {}",
                    r.q,
                    r.p,
                    r.r,
                    r.gamma,
                    r.w,
                    total,
                    r.failures().count(),
                    if r.all_pass { "pass" } else { "FAIL" }
                )
                .unwrap();
            }
            writeln!(s, "{}", if all_pass { "all fields pass" } else { "some fields FAIL" }).unwrap();
            s
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "q": r.q, "p": r.p, "r": r.r, "gamma": r.gamma, "w": r.w,
                        "cases": r.cases.len() + r.order_l2.len(),
                        "failures": r.failures().count(),
                        "all_pass": r.all_pass,
                    })
                })
                .collect();
            let doc = json!({
                "l": args.l, "q_min": args.q_min, "q_max": args.q_max,
                "rows": rows, "all_pass": all_pass,
            });
            serde_json::to_string_pretty(&doc).unwrap() + "\n"
        }
        OutputFormat::Csv => {
            let mut s = format!("{CSV_HEADER}\n");
            for r in reports {
                s.push_str(&r.csv_rows());
            }
            s
        }
    }
}

pub fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Compute(a) => cmd_compute(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Props(a) => cmd_props(a),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(code, text)
            }
        }
    }
}

/// Entry point for the binary: runs, writes output, returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let outcome = run(args);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    outcome.code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_enumeration() {
        let qs = |l, a, b, pw| sweep_fields(l, a, b, pw).into_iter().map(|(p, r)| p.pow(r)).collect::<Vec<_>>();
        assert_eq!(qs(3, 2, 200, false), vec![19, 37, 73, 109, 127, 163, 181, 199]);
        assert_eq!(qs(5, 2, 200, false), vec![101, 151]);
        assert!(qs(3, 20, 30, false).is_empty());
        assert_eq!(qs(3, 300, 400, true), vec![307, 343, 361, 379, 397]);
    }

    #[test]
    fn usage_errors() {
        let o = run(["cyclosum", "compute", "--p", "11", "--l", "3", "--order", "18", "--i", "1", "--j", "1"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("CongruenceFailed"), "{}", o.stderr);
        assert_eq!(run(["cyclosum", "verify", "--p", "19", "--l", "5"]).code, EXIT_USAGE);
        assert_eq!(run(["cyclosum", "sweep", "--l", "3", "--q-min", "20", "--q-max", "30"]).code, EXIT_USAGE);
        assert_eq!(run(["cyclosum", "bogus"]).code, EXIT_USAGE);
        assert_eq!(run(["cyclosum", "--help"]).code, EXIT_PASS);
    }
}
