//! Jordan-Hölder factors of Sym^N over GL2(F_p), plus the same data as a
//! virtual class so negative N work too.
//!
//! cargo run --example decompose_symmetric_powers -- 5 12

use serrewt::weights::{decompose_sym, sym_class};
use serrewt::Prime;

fn main() -> serrewt::Result<()> {
    let mut args = std::env::args().skip(1);
    let p = Prime::new(args.next().map_or(Ok(5), |s| s.parse()).expect("p"))?;
    let n: u64 = args.next().map_or(Ok(12), |s| s.parse()).expect("N");

    let d = decompose_sym(p, n);
    println!("Sym^{n} over GL2(F_{p}):");
    for (w, mult) in d.iter() {
        println!("  {mult} x {w}  (dim {})", w.dim());
    }
    println!("dimension check: {} = {}", d.total_dim(), n + 1);

    // Virtual classes extend the picture below zero.
    for k in [-1i64, -2, -3] {
        println!("[Sym^{k}] = {}", sym_class(p, k));
    }
    Ok(())
}
