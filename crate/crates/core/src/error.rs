use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("p = 2 is not supported; only odd primes are")]
    UnsupportedPrime,

    #[error("{0} is not an odd prime")]
    NotPrime(u64),

    #[error("weight V({a},{b}) out of range for p = {p}: need 0 <= a <= p-2 and 1 <= b <= p")]
    WeightOutOfRange { p: u32, a: i64, b: i64 },

    #[error("exponent {e} is divisible by p+1 modulo p^2-1 (p = {p}); the character has level one")]
    LevelOne { p: u32, e: i64 },

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("cell (n={n}, m={m}) out of range for p = {p}")]
    IndexOutOfRange { p: u32, n: u32, m: u32 },

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("internal invariant breached: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
