//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification counterexample, 2 usage or schema
//! error, 3 internal invariant breach.
//!
//! CSV layouts:
//!
//! * `decompose`: `a,b,mult`, no header line.
//! * `kmin`: `p,a,b,k_min` (plus `search,match` with `--search`), header line.
//! * `weights`: `k_serre,k_min,k_cris,W,B,mu_nonzero`, header line.
//! * `verify`: `p,check,params_checked,failures,ms`, header line.
//! * `table`: `type,a,b,twist,ratio,shape,lambda_equal,k_serre,k_min,k_cris,W_size,W,B,k_equal,sets_equal`,
//!   header line.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{k_min_search, DEFAULT_ORACLE_MAX_P};
use crate::params::{enumerate_params, InertialParam};
use crate::prime::Prime;
use crate::recipes::{evaluate, Evaluation, WeightSet};
use crate::verify::{run_suite, AggregateReport, CheckKind, SuiteConfig};
use crate::weights::{decompose_sym, k_min_closed, SerreWeight};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Default upper end of the prime range for `verify`.
pub const DEFAULT_MAX_P: u64 = 47;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Aligned human-readable text.
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "serrewt", version, about = "Minimal Serre weights, weight sets and crystalline weights mod p")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,

    /// Write output to PATH instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Worker threads for `verify` (default: logical CPUs).
    #[arg(long, global = true, env = "SERREWT_JOBS")]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Jordan–Hölder factors of Sym^N.
    Decompose {
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'N')]
        n: u64,
    },
    /// Minimal k with V(a,b) a constituent of Sym^(k-2).
    Kmin {
        #[arg(short = 'p')]
        p: u64,
        #[arg(short = 'a', allow_negative_numbers = true)]
        a: i64,
        #[arg(short = 'b', allow_negative_numbers = true)]
        b: i64,
        /// Also scan symmetric powers and compare.
        #[arg(long)]
        search: bool,
    },
    /// All recipes for one parameter, given as JSON text, @FILE, or - for stdin.
    Weights {
        #[arg(value_name = "PARAM")]
        param: String,
    },
    /// Exhaustive checks over a prime range such as 3..47, 5, or 3,7,11.
    Verify {
        /// Primes to check: `3..47`, `3..=7`, `5` or `3,7,11` (default 3..max-p).
        #[arg(short = 'p', value_name = "RANGE")]
        primes: Option<String>,
        /// Comma-separated: main, bm, kmin, recursion, brauer, all.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Upper prime when -p is omitted.
        #[arg(long, env = "SERREWT_MAX_P", default_value_t = DEFAULT_MAX_P)]
        max_p: u64,
        /// Largest prime accepted by the brauer check.
        #[arg(long, env = "SERREWT_ORACLE_MAX_P", default_value_t = DEFAULT_ORACLE_MAX_P)]
        oracle_max_p: u32,
        /// Largest k for the recursion check (default 3p).
        #[arg(long)]
        recursion_k_max: Option<u64>,
        /// Largest N for the brauer check (default 3p^2).
        #[arg(long)]
        brauer_max_n: Option<u64>,
        /// Report 0 ms for every run so output is byte-stable.
        #[arg(long)]
        no_timing: bool,
    },
    /// Every parameter for one prime with its weights and weight sets.
    Table {
        #[arg(short = 'p')]
        p: u64,
    },
}

/// Parse `args` and run, writing to `stdout` (or `--out`) and `stderr`.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = write!(stderr, "{}", e.render());
            return code;
        }
    };
    let result = match &cli.out {
        Some(path) => File::create(path).map_err(Error::from).and_then(|f| {
            let mut w = BufWriter::new(f);
            let code = dispatch(&cli, &mut w)?;
            w.flush()?;
            Ok(code)
        }),
        None => dispatch(&cli, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::Internal(_) => EXIT_INTERNAL,
                _ => EXIT_USAGE,
            }
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    run_with(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Decompose { p, n } => cmd_decompose(Prime::new(*p)?, *n, cli.format, out),
        Command::Kmin { p, a, b, search } => {
            let w = SerreWeight::new(Prime::new(*p)?, *a, *b)?;
            cmd_kmin(&w, *search, cli.format, out)
        }
        Command::Weights { param } => cmd_weights(&read_param(param)?, cli.format, out),
        Command::Verify { primes, checks, max_p, oracle_max_p, recursion_k_max, brauer_max_n, no_timing } => {
            let primes = match primes {
                Some(text) => parse_prime_range(text)?,
                None => (3..=*max_p).filter(|&n| Prime::new(n).is_ok()).collect(),
            };
            let cfg = SuiteConfig {
                jobs: cli.jobs.unwrap_or_else(default_jobs).max(1),
                recursion_k_max: *recursion_k_max,
                brauer_max_degree: *brauer_max_n,
                oracle_max_p: *oracle_max_p,
            };
            cmd_verify(&primes, &CheckKind::parse_list(checks)?, &cfg, *no_timing, cli.format, out)
        }
        Command::Table { p } => cmd_table(Prime::new(*p)?, cli.format, out),
    }
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map(usize::from).unwrap_or(1)
}

fn read_param(arg: &str) -> Result<InertialParam> {
    let text = if arg == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path)?
    } else {
        arg.to_owned()
    };
    InertialParam::from_json(text.trim())
}

/// `3..47` (inclusive; composites skipped), `5`, or `3,7,11`. Every listed or
/// included prime must be odd; any `2` is an error.
pub fn parse_prime_range(text: &str) -> Result<Vec<u64>> {
    let bad = || Error::InvalidParam(format!("malformed prime range {text:?}"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim) {
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: u64 = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            if lo <= 2 && hi >= 2 {
                return Err(Error::UnsupportedPrime);
            }
            out.extend(Prime::range(lo, hi).into_iter().map(|p| p.get() as u64));
        } else {
            let p: u64 = part.parse().map_err(|_| bad())?;
            out.push(Prime::new(p)?.get() as u64);
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn write_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Internal(format!("csv: {other:?}")),
    }
}

fn set_text(set: &WeightSet) -> String {
    set.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn cmd_decompose(p: Prime, n: u64, format: OutputFormat, out: &mut dyn Write) -> Result<i32> {
    let d = decompose_sym(p, n);
    match format {
        OutputFormat::Json => write_json(out, &d)?,
        OutputFormat::Csv => {
            let mut w = csv_writer(out);
            for (wt, m) in d.iter() {
                w.write_record([wt.a().to_string(), wt.b().to_string(), m.to_string()]).map_err(csv_err)?;
            }
            w.flush()?;
        }
        OutputFormat::Table => {
            writeln!(out, "Sym^{n} over GL2(F_{p})")?;
            writeln!(out, "{:<10} {:>4} {:>4} {:>6}", "weight", "a", "b", "mult")?;
            for (wt, m) in d.iter() {
                writeln!(out, "{:<10} {:>4} {:>4} {:>6}", wt.to_string(), wt.a(), wt.b(), m)?;
            }
            let total = d.total_dim();
            let ok = if total == n + 1 { "ok" } else { "MISMATCH" };
            writeln!(out, "dimension: sum mult*b = {total}, N+1 = {} ({ok})", n + 1)?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct KminOutput {
    p: Prime,
    a: u32,
    b: u32,
    k_min: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    search: Option<u64>,
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    matches: Option<bool>,
}

pub fn cmd_kmin(w: &SerreWeight, search: bool, format: OutputFormat, out: &mut dyn Write) -> Result<i32> {
    let closed = k_min_closed(w);
    let scanned = if search { Some(k_min_search(w)?) } else { None };
    let matches = scanned.map(|s| s == closed);
    let report = KminOutput { p: w.p(), a: w.a(), b: w.b(), k_min: closed, search: scanned, matches };
    match format {
        OutputFormat::Json => write_json(out, &report)?,
        OutputFormat::Csv => {
            let mut wr = csv_writer(out);
            let mut header = vec!["p", "a", "b", "k_min"];
            let mut row = vec![w.p().to_string(), w.a().to_string(), w.b().to_string(), closed.to_string()];
            if let (Some(s), Some(m)) = (scanned, matches) {
                header.extend(["search", "match"]);
                row.extend([s.to_string(), m.to_string()]);
            }
            wr.write_record(&header).map_err(csv_err)?;
            wr.write_record(&row).map_err(csv_err)?;
            wr.flush()?;
        }
        OutputFormat::Table => match (scanned, matches) {
            (Some(s), Some(m)) => {
                writeln!(out, "{closed} {s} {}", if m { "match" } else { "mismatch" })?;
            }
            _ => writeln!(out, "{closed}")?,
        },
    }
    Ok(match matches {
        Some(false) => EXIT_COUNTEREXAMPLE,
        _ => EXIT_OK,
    })
}

pub fn cmd_weights(param: &InertialParam, format: OutputFormat, out: &mut dyn Write) -> Result<i32> {
    let e = evaluate(param)?;
    let mu_text = e.mu_nonzero.iter().map(|x| format!("mu({},{})={}", x.n, x.m, x.mu)).collect::<Vec<_>>().join(" ");
    match format {
        OutputFormat::Json => write_json(out, &e)?,
        OutputFormat::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["k_serre", "k_min", "k_cris", "W", "B", "mu_nonzero"]).map_err(csv_err)?;
            w.write_record([
                e.k_serre.to_string(),
                e.k_min.to_string(),
                e.k_cris.to_string(),
                set_text(&e.bdj),
                set_text(&e.bm),
                mu_text,
            ])
            .map_err(csv_err)?;
            w.flush()?;
        }
        OutputFormat::Table => {
            writeln!(out, "param    {}", e.param)?;
            writeln!(out, "k_serre  {}", e.k_serre)?;
            writeln!(out, "k_min    {}", e.k_min)?;
            writeln!(out, "k_cris   {}", e.k_cris)?;
            writeln!(out, "W        {}", e.bdj)?;
            writeln!(out, "B        {}", e.bm)?;
            writeln!(out, "mu       {mu_text}")?;
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_verify(
    primes: &[u64],
    checks: &[CheckKind],
    cfg: &SuiteConfig,
    no_timing: bool,
    format: OutputFormat,
    out: &mut dyn Write,
) -> Result<i32> {
    let mut report: AggregateReport = run_suite(primes, checks, cfg)?;
    if no_timing {
        report = report.without_timings();
    }
    match format {
        OutputFormat::Json => write_json(out, &report)?,
        OutputFormat::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["p", "check", "params_checked", "failures", "ms"]).map_err(csv_err)?;
            for r in &report.runs {
                w.write_record([
                    r.p.to_string(),
                    r.check.to_string(),
                    r.params_checked.to_string(),
                    r.failures.len().to_string(),
                    r.elapsed.as_millis().to_string(),
                ])
                .map_err(csv_err)?;
            }
            w.flush()?;
        }
        OutputFormat::Table => {
            writeln!(out, "{:>4} {:<10} {:>8} {:>8} {:>8}", "p", "check", "checked", "failures", "ms")?;
            for r in &report.runs {
                writeln!(
                    out,
                    "{:>4} {:<10} {:>8} {:>8} {:>8}",
                    r.p,
                    r.check.name(),
                    r.params_checked,
                    r.failures.len(),
                    r.elapsed.as_millis()
                )?;
                for f in &r.failures {
                    writeln!(out, "     counterexample {} expected {} got {}", f.param, f.expected, f.actual)?;
                }
            }
            writeln!(out, "{}", if report.pass { "PASS" } else { "FAIL" })?;
        }
    }
    Ok(if report.pass { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
}

#[derive(Serialize)]
struct TableRow {
    #[serde(flatten)]
    evaluation: Evaluation,
    #[serde(rename = "W_size")]
    w_size: usize,
    k_equal: bool,
    sets_equal: bool,
}

pub fn cmd_table(p: Prime, format: OutputFormat, out: &mut dyn Write) -> Result<i32> {
    let rows = enumerate_params(p)
        .iter()
        .map(|x| {
            let e = evaluate(x)?;
            Ok(TableRow { w_size: e.bdj.len(), k_equal: e.all_equal(), sets_equal: e.bdj == e.bm, evaluation: e })
        })
        .collect::<Result<Vec<_>>>()?;
    let all_ok = rows.iter().all(|r| r.k_equal && r.sets_equal);

    let fields = |x: &InertialParam| -> [String; 7] {
        match x {
            InertialParam::Irreducible(i) => {
                ["irreducible".into(), i.a().to_string(), i.b().to_string(), String::new(), String::new(), String::new(), String::new()]
            }
            InertialParam::Reducible(r) => [
                "reducible".into(),
                String::new(),
                String::new(),
                r.twist().to_string(),
                r.ratio().to_string(),
                r.shape().to_string(),
                r.lambda_equal().to_string(),
            ],
        }
    };

    match format {
        OutputFormat::Json => write_json(out, &rows)?,
        OutputFormat::Csv => {
            let mut w = csv_writer(out);
            w.write_record([
                "type", "a", "b", "twist", "ratio", "shape", "lambda_equal", "k_serre", "k_min", "k_cris", "W_size",
                "W", "B", "k_equal", "sets_equal",
            ])
            .map_err(csv_err)?;
            for r in &rows {
                let e = &r.evaluation;
                let mut rec: Vec<String> = fields(&e.param).into();
                rec.extend([
                    e.k_serre.to_string(),
                    e.k_min.to_string(),
                    e.k_cris.to_string(),
                    r.w_size.to_string(),
                    set_text(&e.bdj),
                    set_text(&e.bm),
                    r.k_equal.to_string(),
                    r.sets_equal.to_string(),
                ]);
                w.write_record(&rec).map_err(csv_err)?;
            }
            w.flush()?;
        }
        OutputFormat::Table => {
            writeln!(
                out,
                "{:<12} {:>3} {:>3} {:>5} {:>5} {:<8} {:<5} {:>7} {:>7} {:>7}  {:<28} {:<28} eq",
                "type", "a", "b", "twist", "ratio", "shape", "λ=λ'", "k_serre", "k_min", "k_cris", "W", "B"
            )?;
            for r in &rows {
                let e = &r.evaluation;
                let f = fields(&e.param);
                writeln!(
                    out,
                    "{:<12} {:>3} {:>3} {:>5} {:>5} {:<8} {:<5} {:>7} {:>7} {:>7}  {:<28} {:<28} {}",
                    f[0],
                    f[1],
                    f[2],
                    f[3],
                    f[4],
                    f[5],
                    f[6],
                    e.k_serre,
                    e.k_min,
                    e.k_cris,
                    set_text(&e.bdj),
                    set_text(&e.bm),
                    if r.k_equal && r.sets_equal { "yes" } else { "NO" }
                )?;
            }
        }
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
}
