//! Serre weights and the Grothendieck group of `F̄_p[GL₂(F_p)]`.
//!
//! The irreducible representations are `V_{a,b} = det^a ⊗ Sym^{b-1}` with
//! `0 ≤ a ≤ p-2`, `1 ≤ b ≤ p`. Symmetric powers `S_N = Sym^N F̄_p²` are
//! decomposed by repeatedly peeling off two irreducible constituents and a
//! determinant twist of `S_{N-p-1}`:
//!
//! ```text
//! [S_{n+k(p-1)}] = [S_n] + [det^n ⊗ S_{p-n-1}] + [det ⊗ S_{n+(k-1)(p-1)-2}]
//! ```
//!
//! for `1 ≤ n ≤ p-1`, `k ≥ 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::prime::Prime;

/// The irreducible representation `det^a ⊗ Sym^{b-1}` of `GL₂(F_p)`.
///
/// `a` is always stored reduced modulo `p - 1`. Ordering is by `(p, a, b)`,
/// which is the canonical ordering used by every emitter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SerreWeight {
    p: Prime,
    a: u32,
    b: u32,
}

impl SerreWeight {
    /// Validating constructor: `0 ≤ a ≤ p-2`, `1 ≤ b ≤ p`.
    pub fn new(p: Prime, a: i64, b: i64) -> Result<Self> {
        let pp = p.get() as i64;
        if !(0..=pp - 2).contains(&a) || !(1..=pp).contains(&b) {
            return Err(Error::WeightOutOfRange { p: p.get(), a, b });
        }
        Ok(SerreWeight { p, a: a as u32, b: b as u32 })
    }

    /// `det^a ⊗ Sym^{b-1}` with `a` any integer; `a` is reduced mod `p - 1`.
    pub fn canonical(p: Prime, a: i64, b: i64) -> Result<Self> {
        SerreWeight::new(p, a.rem_euclid(p.pm1()), b)
    }

    // Callers guarantee 1 <= b <= p.
    #[inline]
    pub(crate) fn reduced(p: Prime, a: i64, b: u32) -> Self {
        debug_assert!(b >= 1 && b <= p.get());
        SerreWeight { p, a: a.rem_euclid(p.pm1()) as u32, b }
    }

    /// Every weight for `p`, in canonical order.
    pub fn all(p: Prime) -> impl Iterator<Item = SerreWeight> {
        let pp = p.get();
        (0..pp - 1).flat_map(move |a| (1..=pp).map(move |b| SerreWeight { p, a, b }))
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// Dimension, which is `b`.
    pub fn dim(&self) -> u32 {
        self.b
    }

    /// Exponent `c` such that the centre acts through `x ↦ x^c`, i.e.
    /// `2a + b - 1` modulo `p - 1`.
    pub fn central_exponent(&self) -> u32 {
        ((2 * self.a as i64 + self.b as i64 - 1).rem_euclid(self.p.pm1())) as u32
    }

    /// `det^t ⊗ self`.
    pub fn twist(&self, t: i64) -> SerreWeight {
        SerreWeight::reduced(self.p, self.a as i64 + t, self.b)
    }
}

impl fmt::Display for SerreWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V({},{})", self.a, self.b)
    }
}

impl Serialize for SerreWeight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SerreWeight", 2)?;
        st.serialize_field("a", &self.a)?;
        st.serialize_field("b", &self.b)?;
        st.end()
    }
}

/// Calls `f` once per Jordan–Hölder factor of `Sym^n` (with repetition).
///
/// No allocation; this is the hot path of every scan over weights `k`.
pub(crate) fn for_each_jh_factor(p: Prime, n: u64, mut f: impl FnMut(SerreWeight)) {
    let pp = p.get() as u64;
    let mut rest = n as i64;
    let mut twist: i64 = 0;
    loop {
        if rest < 0 {
            return;
        }
        let r = rest as u64;
        if r < pp {
            f(SerreWeight::reduced(p, twist, r as u32 + 1));
            return;
        }
        let low = (r - 1) % (pp - 1) + 1;
        f(SerreWeight::reduced(p, twist, low as u32 + 1));
        f(SerreWeight::reduced(p, twist + low as i64, (pp - low) as u32));
        rest -= pp as i64 + 1;
        twist += 1;
    }
}

/// Jordan–Hölder factors of `Sym^N` with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    p: Prime,
    degree: u64,
    factors: BTreeMap<SerreWeight, u64>,
}

impl Decomposition {
    pub fn p(&self) -> Prime {
        self.p
    }

    /// The symmetric power `N` this decomposes.
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn multiplicity(&self, w: &SerreWeight) -> u64 {
        self.factors.get(w).copied().unwrap_or(0)
    }

    /// Factors in canonical `(a, b)` order.
    pub fn iter(&self) -> impl Iterator<Item = (SerreWeight, u64)> + '_ {
        self.factors.iter().map(|(w, m)| (*w, *m))
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// `Σ multiplicity · dim`; equals `N + 1`.
    pub fn total_dim(&self) -> u64 {
        self.iter().map(|(w, m)| m * w.dim() as u64).sum()
    }

    pub fn to_class(&self) -> VirtualClass {
        let mut class = VirtualClass::zero(self.p);
        for (w, m) in self.iter() {
            class.add_term(w, BigInt::from(m));
        }
        class
    }
}

impl Serialize for Decomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.factors.len()))?;
        for (w, m) in self.iter() {
            seq.serialize_element(&ClassEntry { a: w.a, b: w.b, mult: MultValue::Small(m as i64) })?;
        }
        seq.end()
    }
}

/// Jordan–Hölder factors of `Sym^N F̄_p²` for `N ≥ 0`.
///
/// Below `p` the symmetric power is irreducible; above, each step contributes
/// `V_{j, n+1}` and `V_{j+n, p-n}` at twist `j` and recurses on `N - p - 1`.
pub fn decompose_sym(p: Prime, n: u64) -> Decomposition {
    let mut factors = BTreeMap::new();
    for_each_jh_factor(p, n, |w| *factors.entry(w).or_insert(0) += 1);
    Decomposition { p, degree: n, factors }
}

/// Multiplicity of `w` as a Jordan–Hölder factor of `Sym^{k-2}`.
///
/// # Panics
///
/// If `k < 2` or `w` belongs to a different prime.
pub fn jh_multiplicity(p: Prime, k: u64, w: &SerreWeight) -> u64 {
    assert!(k >= 2, "weight k must be at least 2");
    assert_eq!(p, w.p, "weight belongs to a different prime");
    let mut count = 0;
    for_each_jh_factor(p, k - 2, |f| {
        if f == *w {
            count += 1;
        }
    });
    count
}

/// Smallest `k ≥ 2` with `w` a constituent of `Sym^{k-2}`, by the closed form
///
/// ```text
/// a(p+1) + b + 1             if a + b < p
/// (a+1)(p+1) + bp - p²       if a + b ≥ p
/// ```
pub fn k_min_closed(w: &SerreWeight) -> u64 {
    let p = w.p.get() as u64;
    let (a, b) = (w.a as u64, w.b as u64);
    if a + b < p {
        a * (p + 1) + b + 1
    } else {
        (a + 1) * (p + 1) + b * p - p * p
    }
}

/// An element of the Grothendieck group: a finite integer combination of
/// Serre weights. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualClass {
    p: Prime,
    coeffs: BTreeMap<SerreWeight, BigInt>,
}

impl VirtualClass {
    pub fn zero(p: Prime) -> Self {
        VirtualClass { p, coeffs: BTreeMap::new() }
    }

    pub fn of(w: SerreWeight) -> Self {
        let mut c = VirtualClass::zero(w.p);
        c.add_term(w, BigInt::from(1));
        c
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn coefficient(&self, w: &SerreWeight) -> BigInt {
        self.coeffs.get(w).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SerreWeight, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// All coefficients non-negative, i.e. the class of a genuine
    /// representation.
    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Virtual dimension.
    pub fn dim(&self) -> BigInt {
        self.iter().map(|(w, c)| c * BigInt::from(w.dim())).sum()
    }

    pub fn add_term(&mut self, w: SerreWeight, c: BigInt) {
        assert_eq!(w.p, self.p, "mixing weights of different primes");
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(w).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&w);
        }
    }

    /// `det^t ⊗ self`.
    pub fn twist(&self, t: i64) -> VirtualClass {
        let mut out = VirtualClass::zero(self.p);
        for (w, c) in self.iter() {
            out.add_term(w.twist(t), c.clone());
        }
        out
    }
}

impl AddAssign<&VirtualClass> for VirtualClass {
    fn add_assign(&mut self, rhs: &VirtualClass) {
        for (w, c) in rhs.iter() {
            self.add_term(*w, c.clone());
        }
    }
}

impl Add<&VirtualClass> for VirtualClass {
    type Output = VirtualClass;

    fn add(mut self, rhs: &VirtualClass) -> VirtualClass {
        self += rhs;
        self
    }
}

impl Neg for VirtualClass {
    type Output = VirtualClass;

    fn neg(mut self) -> VirtualClass {
        for c in self.coeffs.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Sub<&VirtualClass> for VirtualClass {
    type Output = VirtualClass;

    fn sub(self, rhs: &VirtualClass) -> VirtualClass {
        self + &(-rhs.clone())
    }
}

impl fmt::Display for VirtualClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else if i > 0 { "+" } else { "" };
            let mag = c.abs();
            if i > 0 {
                f.write_str(" ")?;
            }
            if mag == BigInt::from(1) {
                write!(f, "{sign}{w}")?;
            } else {
                write!(f, "{sign}{mag}·{w}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum MultValue {
    Small(i64),
    Big(String),
}

#[derive(Serialize)]
struct ClassEntry {
    a: u32,
    b: u32,
    mult: MultValue,
}

impl Serialize for VirtualClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for (w, c) in self.iter() {
            let mult = match c.to_i64() {
                Some(v) => MultValue::Small(v),
                None => MultValue::Big(c.to_string()),
            };
            seq.serialize_element(&ClassEntry { a: w.a, b: w.b, mult })?;
        }
        seq.end()
    }
}

/// `[Sym^N]` for every integer `N`.
///
/// `[Sym^{-1}] = 0` and `[Sym^N] = -[det^{N+1} ⊗ Sym^{-N-2}]` for `N < -1`.
pub fn sym_class(p: Prime, n: i64) -> VirtualClass {
    match n {
        n if n >= 0 => decompose_sym(p, n as u64).to_class(),
        -1 => VirtualClass::zero(p),
        n => -decompose_sym(p, (-n - 2) as u64).to_class().twist(n + 1),
    }
}
