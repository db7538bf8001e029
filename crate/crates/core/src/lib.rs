//! Minimal weights of two-dimensional mod-p Galois representations.
//!
//! Three independent recipes attach a minimal weight to the restriction of
//! `ρ: G_Q → GL₂(F̄_p)` to a decomposition group at an odd prime `p`:
//!
//! * Serre's classical weight `k(ρ)` ([`recipes::serre_k`]),
//! * the minimal weight `k_min(W(ρ))` of the Buzzard–Diamond–Jarvis weight
//!   set ([`recipes::bdj_weight_set`], [`recipes::k_min_of_set`]),
//! * the least crystalline weight `k_cris(ρ)`, read off from the
//!   Breuil–Mézard multiplicity formula with Kisin's `μ_{n,m}`
//!   ([`recipes::kisin_mu`], [`recipes::k_cris`]).
//!
//! All three depend only on a finite amount of local data, modelled by
//! [`InertialParam`]. Because the parameter space is finite for each prime,
//! the agreement of the recipes can be checked exhaustively
//! ([`verify::run_suite`]). The symmetric-power decompositions everything
//! rests on are certified independently by Brauer characters over an exact
//! cyclotomic ring ([`oracle`]).
//!
//! ```
//! use serrewt::{InertialParam, Prime, ExtensionShape};
//! use serrewt::recipes::{serre_k, k_min_of_set, k_cris};
//!
//! let p = Prime::new(5).unwrap();
//! let tres = InertialParam::reducible(p, 0, 1, ExtensionShape::Tres, true).unwrap();
//! assert_eq!(serre_k(&tres), 6);
//! assert_eq!(k_min_of_set(&tres), 6);
//! assert_eq!(k_cris(&tres).unwrap(), 6);
//! ```
//!
//! Runnable programs live in `examples/` (`cargo run --example NAME`):
//! `decompose_symmetric_powers`, `minimal_weights`, `weight_sets`,
//! `kisin_multiplicities`, `brauer_certificate` and `verify_theorems`.

pub mod cli;
mod error;
pub mod oracle;
pub mod params;
mod prime;
pub mod recipes;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use params::{ExtensionShape, InertialParam};
pub use prime::Prime;
pub use recipes::{MuTable, WeightSet};
pub use weights::{Decomposition, SerreWeight, VirtualClass};
