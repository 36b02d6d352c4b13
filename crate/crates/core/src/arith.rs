//! Integer helpers shared across the crate: gcd/lcm, trial-division
//! primality, a small prime iterator, and CRT combination.

use crate::error::{Error, Result};

pub(crate) fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        a %= b;
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Deterministic primality by trial division with a 2/3 wheel.
pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5i64;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

pub(crate) fn next_prime_after(n: i64) -> i64 {
    let mut k = n + 1;
    loop {
        if is_prime(k) {
            return k;
        }
        k += 1;
    }
}

fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        None
    } else {
        Some(old_s.rem_euclid(m))
    }
}

/// Combines `x ≡ r1 (mod m1)` and `x ≡ r2 (mod m2)` for coprime moduli.
/// Returns the residue in `[0, m1*m2)`; the caller guarantees the product
/// fits in `i64`.
pub(crate) fn crt_pair(r1: i64, m1: i64, r2: i64, m2: i64) -> Result<(i64, i64)> {
    debug_assert_eq!(gcd(m1, m2), 1, "crt_pair requires coprime moduli");
    let m = m1
        .checked_mul(m2)
        .ok_or_else(|| Error::Overflow(format!("{m1} * {m2}")))?;
    let (m1_128, m2_128) = (m1 as i128, m2 as i128);
    let inv = mod_inverse(m1_128, m2_128)
        .ok_or_else(|| Error::Internal(format!("moduli {m1} and {m2} are not coprime")))?;
    let diff = (r2 as i128 - r1 as i128).rem_euclid(m2_128);
    let x = r1 as i128 + m1_128 * ((diff * inv) % m2_128);
    Ok((x.rem_euclid(m as i128) as i64, m))
}

pub(crate) fn checked_pow(base: i64, exp: u32) -> Option<i64> {
    let mut acc = 1i64;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}
