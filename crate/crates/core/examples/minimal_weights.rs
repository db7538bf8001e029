//! k_min for every Serre weight at a prime, closed form next to the brute
//! force scan.
//!
//! cargo run --example minimal_weights -- 7

use serrewt::oracle::k_min_search;
use serrewt::weights::k_min_closed;
use serrewt::{Prime, SerreWeight};

fn main() -> serrewt::Result<()> {
    let p = Prime::new(std::env::args().nth(1).map_or(Ok(7), |s| s.parse()).expect("p"))?;
    println!("{:>8} {:>6} {:>6}", "weight", "k_min", "scan");
    for w in SerreWeight::all(p) {
        let closed = k_min_closed(&w);
        let scan = k_min_search(&w)?;
        let flag = if closed == scan { "" } else { "  MISMATCH" };
        println!("{:>8} {closed:>6} {scan:>6}{flag}", w.to_string());
    }
    Ok(())
}
