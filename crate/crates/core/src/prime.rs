use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest prime accepted. Keeps `p² - 1` and the exponent arithmetic well
/// inside `i64`.
pub const MAX_PRIME: u32 = 1 << 20;

/// An odd prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::UnsupportedPrime);
        }
        if p < 3 || p > MAX_PRIME as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// `p - 1`, the order of the mod-p cyclotomic character on inertia.
    #[inline]
    pub fn pm1(self) -> i64 {
        self.0 as i64 - 1
    }

    /// `p² - 1`, the order of the level-two fundamental character.
    #[inline]
    pub fn sq_m1(self) -> i64 {
        let p = self.0 as i64;
        p * p - 1
    }

    /// Odd primes in `[lo, hi]`, ascending.
    pub fn range(lo: u64, hi: u64) -> Vec<Prime> {
        (lo.max(3)..=hi).filter_map(|n| Prime::new(n).ok()).collect()
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<'de> Deserialize<'de> for Prime {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = u64::deserialize(d)?;
        Prime::new(raw).map_err(serde::de::Error::custom)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_two_and_composites() {
        assert!(matches!(Prime::new(2), Err(Error::UnsupportedPrime)));
        assert!(matches!(Prime::new(9), Err(Error::NotPrime(9))));
        assert!(matches!(Prime::new(1), Err(Error::NotPrime(1))));
        assert_eq!(Prime::new(47).unwrap().get(), 47);
    }

    #[test]
    fn range_skips_two() {
        let ps: Vec<u32> = Prime::range(2, 13).into_iter().map(Prime::get).collect();
        assert_eq!(ps, vec![3, 5, 7, 11, 13]);
    }
}
