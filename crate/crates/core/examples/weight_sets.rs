//! Full evaluation of a few inertial parameters: Serre's k, the weight set
//! W with its k_min, and the crystalline weight from the multiplicities.
//!
//! cargo run --example weight_sets
//! cargo run --example weight_sets -- '{"p":7,"type":"irreducible","a":1,"b":4}'

use serrewt::recipes::evaluate;
use serrewt::{ExtensionShape, InertialParam, Prime};

fn main() -> serrewt::Result<()> {
    let params = match std::env::args().nth(1) {
        Some(json) => vec![InertialParam::from_json(&json)?],
        None => {
            let p = Prime::new(5)?;
            vec![
                InertialParam::irreducible(p, 0, 3)?,
                InertialParam::reducible(p, 0, 1, ExtensionShape::Split, false)?,
                InertialParam::reducible(p, 0, 1, ExtensionShape::Peu, true)?,
                InertialParam::reducible(p, 0, 1, ExtensionShape::Tres, true)?,
                InertialParam::reducible(p, 2, 3, ExtensionShape::NonsplitGeneric, false)?,
            ]
        }
    };
    for x in params {
        let e = evaluate(&x)?;
        println!("{}", x.to_json());
        println!("  k = {} / {} / {}   W = {}", e.k_serre, e.k_min, e.k_cris, e.bdj);
        assert!(e.all_equal());
    }
    Ok(())
}
