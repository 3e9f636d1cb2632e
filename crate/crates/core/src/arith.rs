//! Small exact-arithmetic helpers shared across modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `binom(n, k)` as a big integer; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `base^e` as a big integer.
pub fn big_pow(base: i64, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), e)
}

/// Largest `v` with `p^v | n`; `None` for `n = 0`.
pub fn p_adic_valuation(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut n_rem = n;
    let mut phi = n;
    let mut p = 2;
    while p * p <= n_rem {
        if n_rem % p == 0 {
            while n_rem % p == 0 {
                n_rem /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n_rem > 1 {
        phi -= phi / n_rem;
    }
    phi
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `x mod m` in `[0, m)` for big integers.
pub fn big_mod(x: &BigInt, m: &BigInt) -> BigInt {
    x.mod_floor(m)
}
