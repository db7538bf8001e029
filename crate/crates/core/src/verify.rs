//! Exhaustive per-prime checks of the recipe identities.
//!
//! Each check walks a finite, canonically ordered list of items (parameters,
//! weights, identities or symmetric powers), records every mismatch rather
//! than stopping at the first, and reports the mismatches in item order. Work
//! is split into contiguous chunks, one per worker, and the chunks are
//! concatenated in order, so reports do not depend on the worker count.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::oracle::{k_min_search, BrauerContext, DEFAULT_ORACLE_MAX_P};
use crate::params::{enumerate_params, InertialParam};
use crate::prime::Prime;
use crate::recipes::{bdj_weight_set, bm_set, k_cris, k_min_of_set, serre_k};
use crate::weights::{k_min_closed, sym_class, SerreWeight, VirtualClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    /// `k(ρ) = k_min(W(ρ)) = k_cris(ρ)` for every parameter.
    Main,
    /// `B(ρ) = W(ρ)` for every parameter.
    BmEqualsBdj,
    /// Closed-form `k_min` against the scan, for every weight.
    KminFormula,
    /// The symmetric-power recursion and the periodic relation.
    RecursionLemma,
    /// Brauer-character certification of `Sym^N`, `N ≤ 3p²`.
    Brauer,
}

impl CheckKind {
    /// The checks selected by `all`. Brauer certification is opt-in because
    /// its cost grows like `p^6`.
    pub const ALL: [CheckKind; 4] =
        [CheckKind::Main, CheckKind::BmEqualsBdj, CheckKind::KminFormula, CheckKind::RecursionLemma];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Main => "main",
            CheckKind::BmEqualsBdj => "bm",
            CheckKind::KminFormula => "kmin",
            CheckKind::RecursionLemma => "recursion",
            CheckKind::Brauer => "brauer",
        }
    }

    /// Parse a comma-separated list; `all` expands to [`CheckKind::ALL`].
    pub fn parse_list(text: &str) -> Result<Vec<CheckKind>> {
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if part == "all" {
                out.extend(CheckKind::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err(Error::InvalidParam("no checks selected".into()));
        }
        Ok(out)
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "main" => CheckKind::Main,
            "bm" => CheckKind::BmEqualsBdj,
            "kmin" => CheckKind::KminFormula,
            "recursion" => CheckKind::RecursionLemma,
            "brauer" => CheckKind::Brauer,
            other => return Err(Error::InvalidParam(format!("unknown check {other:?}"))),
        })
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One recorded mismatch.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub param: Value,
    pub expected: Value,
    pub actual: Value,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub p: Prime,
    pub check: CheckKind,
    pub params_checked: usize,
    pub failures: Vec<Failure>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("VerificationReport", 5)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("check", self.check.name())?;
        st.serialize_field("params_checked", &self.params_checked)?;
        st.serialize_field("failures", &self.failures)?;
        st.serialize_field("ms", &(self.elapsed.as_millis() as u64))?;
        st.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AggregateReport {
    pub runs: Vec<VerificationReport>,
    pub pass: bool,
}

impl AggregateReport {
    /// Zero every timing field, leaving content that depends only on the
    /// selected primes and checks.
    pub fn without_timings(mut self) -> Self {
        for run in &mut self.runs {
            run.elapsed = Duration::ZERO;
        }
        self
    }

    pub fn failure_count(&self) -> usize {
        self.runs.iter().map(|r| r.failures.len()).sum()
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub jobs: usize,
    /// Largest `k` in the recursion check; `3p` when `None`.
    pub recursion_k_max: Option<u64>,
    /// Largest `N` for Brauer certification; `3p²` when `None`.
    pub brauer_max_degree: Option<u64>,
    /// Brauer certification refuses primes above this.
    pub oracle_max_p: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { jobs: 1, recursion_k_max: None, brauer_max_degree: None, oracle_max_p: DEFAULT_ORACLE_MAX_P }
    }
}

impl SuiteConfig {
    pub fn with_jobs(jobs: usize) -> Self {
        SuiteConfig { jobs: jobs.max(1), ..SuiteConfig::default() }
    }
}

/// Run `check` on `items` across up to `jobs` scoped threads, keeping item
/// order in the output.
fn par_failures<T, F>(items: &[T], jobs: usize, check: F) -> Vec<Failure>
where
    T: Sync,
    F: Fn(&T) -> Option<Failure> + Sync,
{
    if jobs <= 1 || items.len() < 2 {
        return items.iter().filter_map(&check).collect();
    }
    let chunk = items.len().div_ceil(jobs);
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| {
                let check = &check;
                scope.spawn(move || part.iter().filter_map(check).collect::<Vec<_>>())
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn param_value(x: &InertialParam) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn class_value(c: &VirtualClass) -> Value {
    serde_json::to_value(c).expect("serializable")
}

pub fn check_main_theorem(p: Prime) -> VerificationReport {
    run_check(p, CheckKind::Main, &SuiteConfig::default())
}

pub fn check_bm_equals_bdj(p: Prime) -> VerificationReport {
    run_check(p, CheckKind::BmEqualsBdj, &SuiteConfig::default())
}

pub fn check_kmin_formula(p: Prime) -> VerificationReport {
    run_check(p, CheckKind::KminFormula, &SuiteConfig::default())
}

pub fn check_recursion_lemma(p: Prime, k_max: u64) -> VerificationReport {
    let cfg = SuiteConfig { recursion_k_max: Some(k_max), ..SuiteConfig::default() };
    run_check(p, CheckKind::RecursionLemma, &cfg)
}

/// Brauer certification of `Sym^N` for `0 ≤ N ≤ max_degree`.
pub fn check_brauer(p: Prime, max_degree: u64) -> VerificationReport {
    let cfg = SuiteConfig { brauer_max_degree: Some(max_degree), ..SuiteConfig::default() };
    run_check(p, CheckKind::Brauer, &cfg)
}

fn main_theorem_failure(x: &InertialParam) -> Option<Failure> {
    let k_serre = serre_k(x);
    let k_min = k_min_of_set(x);
    let actual = match k_cris(x) {
        Ok(k) if k == k_serre && k_min == k_serre => return None,
        Ok(k) => json!({ "k_min": k_min, "k_cris": k }),
        Err(e) => json!({ "k_min": k_min, "k_cris": e.to_string() }),
    };
    Some(Failure { param: param_value(x), expected: json!({ "k_serre": k_serre }), actual })
}

fn bm_failure(x: &InertialParam) -> Option<Failure> {
    let w = bdj_weight_set(x);
    let b = bm_set(x);
    if w == b {
        return None;
    }
    let diff: Vec<&SerreWeight> = w.symmetric_difference(&b).collect();
    Some(Failure {
        param: json!({ "param": param_value(x), "symmetric_difference": diff }),
        expected: serde_json::to_value(&w).expect("serializable"),
        actual: serde_json::to_value(&b).expect("serializable"),
    })
}

fn kmin_failure(w: &SerreWeight) -> Option<Failure> {
    let closed = k_min_closed(w);
    let actual = match k_min_search(w) {
        Ok(k) if k == closed => return None,
        Ok(k) => json!(k),
        Err(e) => json!(e.to_string()),
    };
    Some(Failure { param: json!(w), expected: json!(closed), actual })
}

#[derive(Clone, Copy, Debug)]
enum Identity {
    /// `S_{n+k(p-1)} = S_n + det^n ⊗ S_{p-n-1} + det ⊗ S_{n+(k-1)(p-1)-2}`.
    Lemma { n: i64, k: i64 },
    /// `S_{n+p-1} - S_n = det ⊗ (S_{n-2} - S_{n-p-1})`.
    Periodic { n: i64 },
}

fn recursion_identities(p: Prime, k_max: u64) -> Vec<Identity> {
    let pp = p.get() as i64;
    let mut out = Vec::new();
    for n in 1..pp {
        for k in 1..=k_max as i64 {
            out.push(Identity::Lemma { n, k });
        }
    }
    for n in -2 * pp..=4 * pp {
        out.push(Identity::Periodic { n });
    }
    out
}

fn identity_failure(p: Prime, id: &Identity) -> Option<Failure> {
    let pp = p.get() as i64;
    let pm1 = pp - 1;
    let (lhs, rhs, label) = match *id {
        Identity::Lemma { n, k } => {
            let lhs = sym_class(p, n + k * pm1);
            let rhs = sym_class(p, n)
                + &VirtualClass::of(SerreWeight::reduced(p, n, (pp - n) as u32))
                + &sym_class(p, n + (k - 1) * pm1 - 2).twist(1);
            (lhs, rhs, json!({ "identity": "lemma", "n": n, "k": k }))
        }
        Identity::Periodic { n } => {
            let lhs = sym_class(p, n + pm1) - &sym_class(p, n);
            let rhs = (sym_class(p, n - 2) - &sym_class(p, n - pp - 1)).twist(1);
            (lhs, rhs, json!({ "identity": "periodic", "n": n }))
        }
    };
    (lhs != rhs).then(|| Failure { param: label, expected: class_value(&lhs), actual: class_value(&rhs) })
}

/// Run one check at one prime.
pub fn run_check(p: Prime, check: CheckKind, cfg: &SuiteConfig) -> VerificationReport {
    let start = Instant::now();
    let jobs = cfg.jobs.max(1);
    let (params_checked, failures) = match check {
        CheckKind::Main => {
            let params = enumerate_params(p);
            (params.len(), par_failures(&params, jobs, main_theorem_failure))
        }
        CheckKind::BmEqualsBdj => {
            let params = enumerate_params(p);
            (params.len(), par_failures(&params, jobs, bm_failure))
        }
        CheckKind::KminFormula => {
            let weights: Vec<SerreWeight> = SerreWeight::all(p).collect();
            (weights.len(), par_failures(&weights, jobs, kmin_failure))
        }
        CheckKind::RecursionLemma => {
            let k_max = cfg.recursion_k_max.unwrap_or(3 * p.get() as u64);
            let ids = recursion_identities(p, k_max);
            (ids.len(), par_failures(&ids, jobs, |id| identity_failure(p, id)))
        }
        CheckKind::Brauer => {
            let pp = p.get() as u64;
            let max = cfg.brauer_max_degree.unwrap_or(3 * pp * pp);
            let ctx = BrauerContext::new(p);
            let degrees: Vec<u64> = (0..=max).collect();
            let failures = par_failures(&degrees, jobs, |&n| {
                let report = ctx.verify_decomposition(n);
                (!report.passed()).then(|| Failure {
                    param: json!({ "N": n }),
                    expected: json!({ "classes_checked": report.classes_checked }),
                    actual: json!({ "failing_classes": report.failures }),
                })
            });
            (degrees.len(), failures)
        }
    };
    VerificationReport { p, check, params_checked, failures, elapsed: start.elapsed() }
}

/// Run `checks` at every prime in `primes`.
///
/// Rejects `2` and composites up front. Brauer certification additionally
/// rejects primes above `cfg.oracle_max_p`.
pub fn run_suite(primes: &[u64], checks: &[CheckKind], cfg: &SuiteConfig) -> Result<AggregateReport> {
    let primes = primes.iter().map(|&p| Prime::new(p)).collect::<Result<Vec<_>>>()?;
    if checks.contains(&CheckKind::Brauer) {
        if let Some(p) = primes.iter().find(|p| p.get() > cfg.oracle_max_p) {
            return Err(Error::InvalidParam(format!(
                "Brauer certification is capped at p <= {}, got p = {p}",
                cfg.oracle_max_p
            )));
        }
    }
    let mut runs = Vec::with_capacity(primes.len() * checks.len());
    for &p in &primes {
        for &check in checks {
            runs.push(run_check(p, check, cfg));
        }
    }
    let pass = runs.iter().all(VerificationReport::passed);
    Ok(AggregateReport { runs, pass })
}
