//! Run the exhaustive verification suite over a range of primes and print
//! the aggregate report as JSON.
//!
//! cargo run --release --example verify_theorems -- 23

use serrewt::verify::{run_suite, CheckKind, SuiteConfig};

fn main() -> serrewt::Result<()> {
    let hi: u64 = std::env::args().nth(1).map_or(Ok(23), |s| s.parse()).expect("upper prime");
    let primes: Vec<u64> = serrewt::Prime::range(3, hi).iter().map(|p| p.get() as u64).collect();
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());

    let report = run_suite(&primes, &CheckKind::ALL, &SuiteConfig::with_jobs(jobs))?;
    for run in &report.runs {
        println!("p={:<3} {:<10} {:>6} checked  {} failures", run.p, run.check.name(), run.params_checked, run.failures.len());
    }
    println!("{}", if report.pass { "PASS" } else { "FAIL" });
    println!("{}", serde_json::to_string(&report.without_timings())?);
    Ok(())
}
