//! Exact arithmetic in `Z[ζ_n] = Z[x] / Φ_n(x)`.

use std::ops::{Add, Neg, Sub};

/// Integer polynomial coefficients, lowest degree first.
pub type IntPoly = Vec<i64>;

/// `Φ_n`, by dividing `x^n - 1` by `Φ_d` for every proper divisor `d | n`.
///
/// # Panics
///
/// If `n == 0`.
pub fn cyclotomic_poly(n: usize) -> IntPoly {
    assert!(n > 0, "cyclotomic polynomials are indexed from 1");
    let divisors: Vec<usize> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut cache: Vec<(usize, IntPoly)> = Vec::with_capacity(divisors.len());
    for &d in &divisors {
        let mut poly = vec![0; d + 1];
        poly[0] = -1;
        poly[d] = 1;
        for (e, phi_e) in &cache {
            if d % e == 0 {
                poly = divide_exact(&poly, phi_e);
            }
        }
        cache.push((d, poly));
    }
    cache.pop().expect("n divides itself").1
}

/// `num / den` for monic `den`, asserting a zero remainder.
fn divide_exact(num: &[i64], den: &[i64]) -> IntPoly {
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1, "divisor must be monic");
    let mut rem = num.to_vec();
    let mut quot = vec![0; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        if c == 0 {
            continue;
        }
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "division is not exact");
    quot
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    let (mut n, mut out) = (n, n);
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            while n % q == 0 {
                n /= q;
            }
            out -= out / q;
        }
        q += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// The ring `Z[x] / Φ_n`. Elements are stored in the power basis
/// `1, x, …, x^{φ(n)-1}`, so equality is coefficient-wise.
#[derive(Clone, Debug)]
pub struct CyclotomicRing {
    n: usize,
    modulus: IntPoly,
    // Non-leading terms of Φ_n, for sparse reduction.
    tail: Vec<(usize, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicElement {
    coeffs: Vec<i64>,
}

impl CyclotomicRing {
    pub fn new(n: usize) -> Self {
        let modulus = cyclotomic_poly(n);
        let deg = modulus.len() - 1;
        let tail = modulus[..deg].iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect();
        CyclotomicRing { n, modulus, tail }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `φ(n)`, the rank of the ring over `Z`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    pub fn zero(&self) -> CyclotomicElement {
        CyclotomicElement { coeffs: vec![0; self.degree()] }
    }

    pub fn one(&self) -> CyclotomicElement {
        self.root_power(0)
    }

    pub fn from_int(&self, c: i64) -> CyclotomicElement {
        let mut e = self.zero();
        e.coeffs[0] = c;
        e
    }

    /// Reduce an arbitrary integer polynomial modulo `Φ_n`.
    pub fn reduce(&self, mut poly: Vec<i64>) -> CyclotomicElement {
        let deg = self.degree();
        for i in (deg..poly.len()).rev() {
            let c = poly[i];
            if c == 0 {
                continue;
            }
            poly[i] = 0;
            let shift = i - deg;
            for &(j, t) in &self.tail {
                poly[shift + j] -= c * t;
            }
        }
        poly.resize(deg, 0);
        CyclotomicElement { coeffs: poly }
    }

    /// `ζ^k` for any integer `k`.
    pub fn root_power(&self, k: i64) -> CyclotomicElement {
        let k = k.rem_euclid(self.n as i64) as usize;
        let mut poly = vec![0; k.max(self.degree()) + 1];
        poly[k] = 1;
        self.reduce(poly)
    }

    /// `Σ_k counts[k] ζ^k`, with `counts` indexed by exponent mod `n`.
    pub fn from_exponent_counts(&self, counts: &[i64]) -> CyclotomicElement {
        assert_eq!(counts.len(), self.n, "one count per exponent class");
        self.reduce(counts.to_vec())
    }

    pub fn mul(&self, a: &CyclotomicElement, b: &CyclotomicElement) -> CyclotomicElement {
        let mut prod = vec![0; a.coeffs.len() + b.coeffs.len()];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        self.reduce(prod)
    }
}

impl CyclotomicElement {
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl Add for &CyclotomicElement {
    type Output = CyclotomicElement;

    fn add(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(x, y)| x + y).collect();
        CyclotomicElement { coeffs }
    }
}

impl Sub for &CyclotomicElement {
    type Output = CyclotomicElement;

    fn sub(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(x, y)| x - y).collect();
        CyclotomicElement { coeffs }
    }
}

impl Neg for CyclotomicElement {
    type Output = CyclotomicElement;

    fn neg(mut self) -> CyclotomicElement {
        self.coeffs.iter_mut().for_each(|c| *c = -*c);
        self
    }
}
