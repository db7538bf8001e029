//! Certify symmetric-power decompositions by comparing Brauer characters in
//! Z[zeta_{p^2-1}] on every p-regular class.
//!
//! cargo run --release --example brauer_certificate -- 7

use std::time::Instant;

use serrewt::oracle::{p_regular_classes, BrauerContext};
use serrewt::Prime;

fn main() -> serrewt::Result<()> {
    let p = Prime::new(std::env::args().nth(1).map_or(Ok(7), |s| s.parse()).expect("p"))?;
    let start = Instant::now();
    let ctx = BrauerContext::new(p);
    println!("p = {p}: {} p-regular classes", p_regular_classes(p).len());

    let max = 3 * (p.get() as u64).pow(2);
    let mut bad = 0;
    for n in 0..=max {
        let report = ctx.verify_decomposition(n);
        if !report.passed() {
            bad += 1;
            println!("Sym^{n}: mismatch on {:?}", report.failures);
        }
    }
    println!("certified Sym^0 ..= Sym^{max}, {bad} failures, {:.2?}", start.elapsed());
    Ok(())
}
