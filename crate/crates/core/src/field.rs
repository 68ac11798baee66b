//! Arithmetic in the prime field F_p on `u32` residues.

use crate::error::{Error, Result};

/// Largest characteristic accepted anywhere in the crate.
pub const MAX_PRIME: u32 = (1 << 31) - 1;

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (if s >= p as u64 { s - p as u64 } else { s }) as u32
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        (a as u64 + p as u64 - b as u64) as u32
    }
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse by Fermat's little theorem; `a` must be nonzero mod p.
pub fn inv(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow(a, p as u64 - 2, p)
}

/// Reduces a signed integer into `[0, p)`.
pub fn reduce(c: i128, p: u32) -> u32 {
    c.rem_euclid(p as i128) as u32
}

/// Deterministic primality test by trial division (p ≤ 2^31).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut k = 3u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

pub fn check_prime(p: u64) -> Result<u32> {
    if p > MAX_PRIME as u64 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(p as u32)
}

/// Returns `e` with `q = p^e`, if `q` is a positive power of `p`.
pub fn frobenius_exponent(q: u32, p: u32) -> Option<u32> {
    if q < p {
        return None;
    }
    let (mut r, mut e) = (q, 0);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some(e)
}
