//! p-adic valuations and small-integer multiplicative helpers.
//!
//! Everything here is desk scale: trial division is plenty for the moduli and
//! horizons this crate works at.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

/// Largest `e` with `p^e | n`. Requires `p ≥ 2` and `n ≥ 1`.
pub fn nu(p: u64, n: u64) -> u32 {
    assert!(p >= 2 && n >= 1, "nu(p, n) needs p >= 2, n >= 1");
    let mut e = 0;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    e
}

/// `n / p^{ν_p(n)}` — the p-free part of `n ≥ 1`.
pub fn p_free_part(p: u64, n: u64) -> u64 {
    assert!(p >= 2 && n >= 1);
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m
}

pub fn nu_big(p: u64, n: &BigUint) -> u64 {
    assert!(!n.is_zero(), "nu of zero is undefined");
    let p = BigUint::from(p);
    let mut e = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return e;
        }
        m = q;
        e += 1;
    }
}

pub fn p_free_part_big(p: u64, n: &BigUint) -> BigUint {
    assert!(!n.is_zero());
    let p = BigUint::from(p);
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return m;
        }
        m = q;
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            let mut e = 0;
            while m.is_multiple_of(d) {
                m /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Product of the distinct primes dividing `n`.
pub fn radical(n: u64) -> u64 {
    prime_divisors(n).into_iter().product::<u64>().max(1)
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1);
    let mut out = n;
    for (p, _) in factorize(n) {
        out = out / p * (p - 1);
    }
    out
}
