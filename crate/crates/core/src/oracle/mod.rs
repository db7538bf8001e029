//! Independent checks of the weights module.
//!
//! Symmetric-power decompositions are certified with Brauer characters:
//! the irreducible Brauer characters of `GL₂(F_p)` are linearly independent
//! on the `p(p-1)` p-regular classes, so two classes in the Grothendieck
//! group agree exactly when their characters do. Characters are evaluated in
//! `Z[ζ_{p²-1}]` with no rounding anywhere.
//!
//! The closed form for `k_min` is checked against a literal scan over
//! symmetric powers.

mod cyclotomic;
mod field;

use std::fmt;

use serde::Serialize;

pub use cyclotomic::{cyclotomic_poly, totient, CyclotomicElement, CyclotomicRing, IntPoly};
pub use field::QuadraticField;

use crate::error::{Error, Result};
use crate::prime::Prime;
use crate::weights::{decompose_sym, jh_multiplicity, Decomposition, SerreWeight};

/// Default largest prime for Brauer certification.
pub const DEFAULT_ORACLE_MAX_P: u32 = 31;

/// A p-regular conjugacy class of `GL₂(F_p)`, named by its eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PRegularClass {
    /// The scalar matrix `x·I`.
    Central { x: u32 },
    /// Eigenvalues `x ≠ y` in `F_p^×`, stored with `x < y`.
    Split { x: u32, y: u32 },
    /// Eigenvalues `{g^j, g^{pj}}` in `F_{p²} \ F_p`, with `j` the smaller
    /// representative.
    Nonsplit { j: u32 },
}

impl fmt::Display for PRegularClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PRegularClass::Central { x } => write!(f, "central({x})"),
            PRegularClass::Split { x, y } => write!(f, "split({x},{y})"),
            PRegularClass::Nonsplit { j } => write!(f, "nonsplit(g^{j})"),
        }
    }
}

/// All p-regular classes: `p - 1` central, `(p-1)(p-2)/2` split and
/// `p(p-1)/2` non-split.
pub fn p_regular_classes(p: Prime) -> Vec<PRegularClass> {
    let pp = p.get();
    let n = p.sq_m1() as u32;
    let mut out: Vec<PRegularClass> = (1..pp).map(|x| PRegularClass::Central { x }).collect();
    for x in 1..pp {
        for y in x + 1..pp {
            out.push(PRegularClass::Split { x, y });
        }
    }
    for j in 1..n {
        let conj = (j as u64 * pp as u64 % n as u64) as u32;
        if j % (pp + 1) != 0 && j < conj {
            out.push(PRegularClass::Nonsplit { j });
        }
    }
    out
}

/// Shared state for Brauer-character computations at one prime: the field
/// `F_{p²}` with its discrete-log table, the cyclotomic ring `Z[ζ_{p²-1}]`
/// and the list of p-regular classes. Eigenvalue `g^j` lifts to `ζ^j`.
#[derive(Clone, Debug)]
pub struct BrauerContext {
    p: Prime,
    field: QuadraticField,
    ring: CyclotomicRing,
    classes: Vec<PRegularClass>,
}

impl BrauerContext {
    pub fn new(p: Prime) -> Self {
        BrauerContext {
            p,
            field: QuadraticField::new(p),
            ring: CyclotomicRing::new(p.sq_m1() as usize),
            classes: p_regular_classes(p),
        }
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn field(&self) -> &QuadraticField {
        &self.field
    }

    pub fn ring(&self) -> &CyclotomicRing {
        &self.ring
    }

    pub fn classes(&self) -> &[PRegularClass] {
        &self.classes
    }

    /// Exponents `(i, i')` with the class eigenvalues lifted to `ζ^i, ζ^{i'}`.
    pub fn eigen_exponents(&self, c: &PRegularClass) -> (u64, u64) {
        let n = self.field.unit_order();
        match *c {
            PRegularClass::Central { x } => {
                let i = self.field.log_residue(x as u64);
                (i, i)
            }
            PRegularClass::Split { x, y } => (self.field.log_residue(x as u64), self.field.log_residue(y as u64)),
            PRegularClass::Nonsplit { j } => (j as u64, j as u64 * self.p.get() as u64 % n),
        }
    }

    // counts[e] += 1 for every exponent e of Σ_{t=0}^{len-1} u^t v^{len-1-t}, shifted by `base`.
    fn accumulate(&self, counts: &mut [i64], c: &PRegularClass, base: u64, len: u64, weight: i64) {
        let n = counts.len() as u64;
        let (i, ip) = self.eigen_exponents(c);
        if len == 0 {
            return;
        }
        let step = (i + n - ip) % n;
        let mut e = (base + ip * ((len - 1) % n)) % n;
        for _ in 0..len {
            counts[e as usize] += weight;
            e = (e + step) % n;
        }
    }

    /// Brauer character of `det^a ⊗ Sym^{b-1}`:
    /// `(uv)^a Σ_{t=0}^{b-1} u^t v^{b-1-t}`.
    pub fn char_weight(&self, w: &SerreWeight, c: &PRegularClass) -> CyclotomicElement {
        let mut counts = vec![0; self.ring.order()];
        self.add_weight_char(&mut counts, w, c, 1);
        self.ring.from_exponent_counts(&counts)
    }

    fn add_weight_char(&self, counts: &mut [i64], w: &SerreWeight, c: &PRegularClass, mult: i64) {
        let n = counts.len() as u64;
        let (i, ip) = self.eigen_exponents(c);
        let det = (i + ip) % n * w.a() as u64 % n;
        self.accumulate(counts, c, det, w.b() as u64, mult);
    }

    /// Brauer character of `Sym^N`: `Σ_{t=0}^{N} u^t v^{N-t}`.
    pub fn char_sym(&self, degree: u64, c: &PRegularClass) -> CyclotomicElement {
        let mut counts = vec![0; self.ring.order()];
        self.accumulate(&mut counts, c, 0, degree + 1, 1);
        self.ring.from_exponent_counts(&counts)
    }

    /// Brauer character of a decomposition, `Σ mult · χ_w`.
    pub fn char_decomposition(&self, d: &Decomposition, c: &PRegularClass) -> CyclotomicElement {
        let mut counts = vec![0; self.ring.order()];
        for (w, m) in d.iter() {
            self.add_weight_char(&mut counts, &w, c, m as i64);
        }
        self.ring.from_exponent_counts(&counts)
    }

    /// Certify `decompose_sym(p, N)` on every p-regular class.
    pub fn verify_decomposition(&self, degree: u64) -> DecompositionReport {
        let decomposition = decompose_sym(self.p, degree);
        let failures = self
            .classes
            .iter()
            .filter(|c| self.char_sym(degree, c) != self.char_decomposition(&decomposition, c))
            .copied()
            .collect();
        DecompositionReport {
            p: self.p.get(),
            degree,
            classes_checked: self.classes.len(),
            failures,
        }
    }
}

/// Outcome of certifying one symmetric power.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub p: u32,
    #[serde(rename = "N")]
    pub degree: u64,
    pub classes_checked: usize,
    pub failures: Vec<PRegularClass>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Smallest `k ∈ [2, p²]` with `w` a constituent of `Sym^{k-2}`, by scanning.
pub fn k_min_search(w: &SerreWeight) -> Result<u64> {
    let p = w.p();
    let bound = p.get() as u64 * p.get() as u64;
    (2..=bound)
        .find(|&k| jh_multiplicity(p, k, w) > 0)
        .ok_or_else(|| Error::Internal(format!("{w} does not occur in Sym^(k-2) for k <= p^2")))
}
