use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{big_pow, binomial};
use crate::error::{Error, Result};
use crate::walk::WalkTime;
use crate::zq::is_prime;

use super::graphs::SchemeGraphSpec;
use super::krawtchouk::KrawtchoukTable;

/// Outcome of a congruence test: whether it holds, the sign that made it
/// hold (when the test has one) and the mixing time it certifies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CongruenceResult {
    pub satisfied: bool,
    pub epsilon: Option<i8>,
    pub time: Option<WalkTime>,
}

impl CongruenceResult {
    fn failed() -> Self {
        CongruenceResult { satisfied: false, epsilon: None, time: None }
    }
}

fn check_k(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::Precondition(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

fn pow_u64(base: u64, e: u32) -> Result<u64> {
    base.checked_pow(e).ok_or_else(|| Error::Unsupported(format!("{base}^{e} overflows the time denominator")))
}

/// Time certified by the congruence tests: `π/2^k` for `q ∈ {2, 4}` and
/// `2π/3^k` for `q = 3`.
pub fn certified_time(q: u32, k: u32) -> Result<WalkTime> {
    match q {
        2 | 4 => Ok(WalkTime::two_pi_over(pow_u64(2, k + 1)?)),
        3 => Ok(WalkTime::two_pi_over(pow_u64(3, k)?)),
        _ => Err(Error::Unsupported(format!("no congruence criterion for q = {q}"))),
    }
}

fn congruent(x: &BigInt, target: &BigInt, modulus: &BigInt) -> bool {
    (x - target).mod_floor(modulus).is_zero()
}

/// Tries `ε = +1` then `ε = -1` with `values[s] ≡ ε · unit(s) (mod modulus)`.
fn with_sign(
    values: &[BigInt],
    unit: impl Fn(usize) -> BigInt,
    modulus: &BigInt,
    signed: bool,
) -> Option<Option<i8>> {
    let signs: &[i8] = if signed { &[1, -1] } else { &[1] };
    signs
        .iter()
        .find(|&&e| values.iter().enumerate().all(|(s, v)| congruent(v, &(unit(s) * e), modulus)))
        .map(|&e| signed.then_some(e))
}

/// Tests whether `θ_s - θ_0` has the linear shape that forces uniform mixing:
/// `ε 2^{k-1} s (mod 2^{k+1})` for `q = 2`, `ε 3^{k-1} s (mod 3^k)` for
/// `q = 3`, `2^k s (mod 2^{k+1})` for `q = 4`.  Other moduli never pass.
pub fn theta_congruence_condition(theta: &[BigInt], q: u32, k: u32) -> Result<CongruenceResult> {
    check_k(k)?;
    let Some(theta0) = theta.first() else {
        return Err(Error::Precondition("empty eigenvalue list".into()));
    };
    let diffs: Vec<BigInt> = theta.iter().map(|t| t - theta0).collect();
    let k = k as usize;
    let (step, modulus, signed) = match q {
        2 => (big_pow(2, k - 1), big_pow(2, k + 1), true),
        3 => (big_pow(3, k - 1), big_pow(3, k), true),
        4 => (big_pow(2, k), big_pow(2, k + 1), false),
        _ => return Ok(CongruenceResult::failed()),
    };
    Ok(match with_sign(&diffs, |s| &step * s, &modulus, signed) {
        Some(epsilon) => CongruenceResult { satisfied: true, epsilon, time: Some(certified_time(q, k as u32)?) },
        None => CongruenceResult::failed(),
    })
}

/// `v = P^{(d-1)} (a_1, …, a_d)^T`, i.e. `v_s = Σ_r a_r p^{(d-1)}_{r-1}(s)`;
/// these are the scaled eigenvalue gaps `(θ_s - θ_{s+1}) / q`.
pub fn eigenvalue_gaps(spec: &SchemeGraphSpec) -> Result<Vec<BigInt>> {
    let d = spec.dim();
    let table = KrawtchoukTable::new(d - 1, spec.q())?;
    let mut a = vec![BigInt::zero(); d];
    for &r in spec.classes() {
        a[r - 1] += 1;
    }
    Ok(table.apply(&a))
}

/// Sufficient condition for a union of distance graphs:
/// `v ≡ ε 2^{k-2} (mod 2^k)` for `q = 2`, `v ≡ ε 3^{k-2} (mod 3^{k-1})` for
/// `q = 3` and `v ≡ 2^{k-2} (mod 2^{k-1})` for `q = 4`, entrywise, with `v`
/// from [`eigenvalue_gaps`].
pub fn scheme_graph_condition(spec: &SchemeGraphSpec, k: u32) -> Result<CongruenceResult> {
    check_k(k)?;
    let q = spec.q();
    let k = k as usize;
    let (unit, modulus, signed) = match q {
        2 => (big_pow(2, k - 2), big_pow(2, k), true),
        3 => (big_pow(3, k - 2), big_pow(3, k - 1), true),
        4 => (big_pow(2, k - 2), big_pow(2, k - 1), false),
        _ => return Ok(CongruenceResult::failed()),
    };
    let gaps = eigenvalue_gaps(spec)?;
    Ok(match with_sign(&gaps, |_| unit.clone(), &modulus, signed) {
        Some(epsilon) => CongruenceResult { satisfied: true, epsilon, time: Some(certified_time(q, k as u32)?) },
        None => CongruenceResult::failed(),
    })
}

fn check_dr(d: usize, r: usize) -> Result<()> {
    if d == 0 || r == 0 || r > d {
        return Err(Error::Precondition(format!("need 1 ≤ r ≤ d, got d = {d}, r = {r}")));
    }
    Ok(())
}

fn divides(m: &BigInt, n: &BigInt) -> bool {
    n.mod_floor(m).is_zero()
}

/// Binomial-coefficient condition for the distance graph `X_r` of `H(d,3)`:
/// (i) `2^{r-1} binom(d-1, r-1) ≡ ε 3^{k-2} (mod 3^{k-1})` and
/// (ii) `3^{k-h-1} | binom(d-h-1, r-h-1)` for `1 ≤ h ≤ k-2`.
/// When it holds, `X_r` and `X_{d-r+1}` mix at `2π/3^k`.
pub fn main3_condition(d: usize, r: usize, k: u32) -> Result<CongruenceResult> {
    check_k(k)?;
    check_dr(d, r)?;
    let ku = k as usize;
    let lead = big_pow(2, r - 1) * binomial(d - 1, r - 1);
    let Some(epsilon) = with_sign(&[lead], |_| big_pow(3, ku - 2), &big_pow(3, ku - 1), true) else {
        return Ok(CongruenceResult::failed());
    };
    let tail = (1..=ku.saturating_sub(2))
        .all(|h| h + 1 > r || divides(&big_pow(3, ku - h - 1), &binomial(d - h - 1, r - h - 1)));
    if !tail {
        return Ok(CongruenceResult::failed());
    }
    Ok(CongruenceResult { satisfied: true, epsilon, time: Some(certified_time(3, k)?) })
}

/// Binomial-coefficient condition for the distance graph `X_r` of `H(d,4)`:
/// (i) `3^{r-1} binom(d-1, r-1) ≡ 2^{k-2} (mod 2^{k-1})` and
/// (ii) `2^{k-2h-1} | binom(d-h-1, r-h-1)` for `1 ≤ h ≤ ⌊k/2⌋ - 1`.
/// When it holds, `X_r` mixes at `π/2^k`.
pub fn main4_condition(d: usize, r: usize, k: u32) -> Result<CongruenceResult> {
    check_k(k)?;
    check_dr(d, r)?;
    let ku = k as usize;
    let lead = big_pow(3, r - 1) * binomial(d - 1, r - 1);
    if !congruent(&lead, &big_pow(2, ku - 2), &big_pow(2, ku - 1)) {
        return Ok(CongruenceResult::failed());
    }
    let tail = (1..ku / 2).all(|h| h + 1 > r || divides(&big_pow(2, ku - 2 * h - 1), &binomial(d - h - 1, r - h - 1)));
    if !tail {
        return Ok(CongruenceResult::failed());
    }
    Ok(CongruenceResult { satisfied: true, epsilon: None, time: Some(certified_time(4, k)?) })
}

/// Number of carries when adding `M` and `N - M` in base `p`; by Kummer's
/// theorem this is the `p`-adic valuation of `binom(N, M)`.
pub fn kummer_carries(n: u64, m: u64, p: u64) -> Result<u32> {
    if m > n {
        return Err(Error::IndexOutOfRange(format!("M = {m} exceeds N = {n}")));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (mut a, mut b) = (m, n - m);
    let (mut carry, mut count) = (0u64, 0u32);
    while a > 0 || b > 0 || carry > 0 {
        let digit = a % p + b % p + carry;
        carry = u64::from(digit >= p);
        count += carry as u32;
        a /= p;
        b /= p;
    }
    Ok(count)
}

/// `binom(N, M)` mod `p^e`, a convenience used by reports.
pub fn binomial_residue(n: usize, m: usize, p: u64, e: u32) -> BigInt {
    let modulus = BigInt::from(p).pow(e);
    if m > n {
        return BigInt::zero();
    }
    binomial(n, m).mod_floor(&modulus)
}
