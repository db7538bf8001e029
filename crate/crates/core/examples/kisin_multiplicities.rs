//! Kisin's multiplicities mu_{n,m} and the Breuil-Mézard sum
//! e(k) = sum a(n,m) mu_{n,m} as k grows. The first nonzero k is k_cris.
//!
//! cargo run --example kisin_multiplicities

use serrewt::recipes::{k_cris, MuTable};
use serrewt::{ExtensionShape, InertialParam, Prime};

fn main() -> serrewt::Result<()> {
    let p = Prime::new(7)?;
    let cases = [
        ("split, equal eigenvalues", InertialParam::reducible(p, 1, 0, ExtensionShape::Split, true)?),
        ("split, distinct eigenvalues", InertialParam::reducible(p, 1, 0, ExtensionShape::Split, false)?),
        ("tres ramifiee", InertialParam::reducible(p, 0, 1, ExtensionShape::Tres, true)?),
        ("irreducible", InertialParam::irreducible(p, 2, 5)?),
    ];
    for (label, x) in cases {
        let table = MuTable::of(&x);
        let cells: Vec<String> = table.nonzero().map(|(n, m, mu)| format!("mu[{n},{m}]={mu}")).collect();
        let series: Vec<String> = (2..=20).map(|k| table.bm_multiplicity(k).to_string()).collect();
        println!("{label}: {}", cells.join(" "));
        println!("  e(k), k = 2..20: {}", series.join(" "));
        println!("  k_cris = {}", k_cris(&x)?);
    }
    Ok(())
}
