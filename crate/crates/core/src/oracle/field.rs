//! `F_{p²}` as `F_p[√d]` with a discrete-logarithm table.

use crate::prime::Prime;

/// The field with `p²` elements, a fixed generator `g` of its unit group and
/// the table `x ↦ log_g x`.
///
/// `d` is the least quadratic non-residue mod `p`. Elements `x + y√d` are
/// indexed by `x + p·y`; `g` is the unit of least index whose order is
/// `p² - 1`.
#[derive(Clone, Debug)]
pub struct QuadraticField {
    p: u64,
    d: u64,
    generator: u64,
    // log[index] = j with g^j = element; u64::MAX at index 0.
    log: Vec<u64>,
}

impl QuadraticField {
    pub fn new(p: Prime) -> Self {
        let p = p.get() as u64;
        let d = (2..p).find(|&d| pow_mod(d, (p - 1) / 2, p) == p - 1).expect("odd primes have non-residues");
        let mut field = QuadraticField { p, d, generator: 0, log: Vec::new() };
        let order = p * p - 1;
        let prime_factors = distinct_prime_factors(order);
        field.generator = (1..p * p)
            .find(|&g| prime_factors.iter().all(|&q| field.pow(g, order / q) != 1))
            .expect("the unit group is cyclic");

        let mut log = vec![u64::MAX; (p * p) as usize];
        let mut x = 1;
        for j in 0..order {
            log[x as usize] = j;
            x = field.mul(x, field.generator);
        }
        field.log = log;
        field
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The non-residue `d` with `F_{p²} = F_p[√d]`.
    pub fn non_residue(&self) -> u64 {
        self.d
    }

    /// Index of the chosen generator `g`.
    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// `p² - 1`.
    pub fn unit_order(&self) -> u64 {
        self.p * self.p - 1
    }

    pub fn mul(&self, u: u64, v: u64) -> u64 {
        let p = self.p;
        let (x1, y1, x2, y2) = (u % p, u / p, v % p, v / p);
        let x = (x1 * x2 + self.d * (y1 * y2 % p)) % p;
        let y = (x1 * y2 + x2 * y1) % p;
        x + p * y
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `log_g` of the element with index `u`; `None` for zero.
    pub fn log(&self, u: u64) -> Option<u64> {
        self.log.get(u as usize).copied().filter(|&j| j != u64::MAX)
    }

    /// `log_g x` for a non-zero residue `x ∈ F_p^×`; always a multiple of
    /// `p + 1`.
    pub fn log_residue(&self, x: u64) -> u64 {
        assert!(!x.is_multiple_of(self.p), "zero has no logarithm");
        self.log[(x % self.p) as usize]
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
