use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{big_pow, binomial};
use crate::error::{Error, Result};

fn check_indices(d: usize, r: usize, s: usize) -> Result<()> {
    if r > d || s > d {
        return Err(Error::IndexOutOfRange(format!("r = {r}, s = {s} with d = {d}")));
    }
    Ok(())
}

/// `p_r^{(d)}(s) = Σ_h (-q)^h (q-1)^{r-h} binom(d-h, r-h) binom(s, h)`.
pub fn krawtchouk(d: usize, q: u32, r: usize, s: usize) -> Result<BigInt> {
    check_indices(d, r, s)?;
    let q = q as i64;
    Ok((0..=r.min(s))
        .map(|h| big_pow(-q, h) * big_pow(q - 1, r - h) * binomial(d - h, r - h) * binomial(s, h))
        .sum())
}

/// `[x^r] (1 + (q-1)x)^{d-s} (1 - x)^s`, the generating-function definition.
pub fn krawtchouk_gf(d: usize, q: u32, r: usize, s: usize) -> Result<BigInt> {
    check_indices(d, r, s)?;
    let q = q as i64;
    Ok((0..=r.min(d - s))
        .filter(|&j| r - j <= s)
        .map(|j| {
            let sign = if (r - j) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            binomial(d - s, j) * big_pow(q - 1, j) * binomial(s, r - j) * sign
        })
        .sum())
}

/// The eigenvalue matrix `P^{(d)}` of the Hamming scheme: `values[s][r] = p_r(s)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KrawtchoukTable {
    pub d: usize,
    pub q: u32,
    pub values: Vec<Vec<BigInt>>,
}

impl KrawtchoukTable {
    /// Built from the boundary values `p_0(s) = 1`, `p_r(0) = (q-1)^r binom(d, r)`
    /// and the recurrence `p_r(s) = p_r(s-1) - (q-1)p_{r-1}(s) - p_{r-1}(s-1)`.
    pub fn new(d: usize, q: u32) -> Result<Self> {
        crate::zq::check_modulus(q)?;
        let qm1 = BigInt::from(q - 1);
        let mut values = vec![vec![BigInt::zero(); d + 1]; d + 1];
        for r in 0..=d {
            values[0][r] = big_pow(q as i64 - 1, r) * binomial(d, r);
        }
        for s in 1..=d {
            values[s][0] = BigInt::one();
            for r in 1..=d {
                values[s][r] = &values[s - 1][r] - &qm1 * &values[s][r - 1] - &values[s - 1][r - 1];
            }
        }
        Ok(KrawtchoukTable { d, q, values })
    }

    pub fn get(&self, r: usize, s: usize) -> &BigInt {
        &self.values[s][r]
    }

    /// `P^{(d)}` applied to a coefficient vector indexed by `r`.
    pub fn apply(&self, a: &[BigInt]) -> Vec<BigInt> {
        self.values.iter().map(|row| row.iter().zip(a).map(|(p, x)| p * x).sum()).collect()
    }
}

/// Which identities held in [`verify_recurrences`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceReport {
    pub d: usize,
    pub q: u32,
    /// Closed sum, generating function and recurrence table agree.
    pub closed_sum: bool,
    /// `p_r(s) - p_r(s-1) + (q-1)p_{r-1}(s) + p_{r-1}(s-1) = 0`.
    pub adjacent: bool,
    /// `p_r^{(d)}(s) - p_r^{(d)}(s+1) = q p_{r-1}^{(d-1)}(s)`.
    pub descent: bool,
    /// Binary four-term identity; `None` unless `q = 2` and `d ≥ 2`.
    pub binary_step_two: Option<bool>,
    /// Matrix form `L (I - C) P^{(d)} R = q P^{(d-1)} ⊕ 0` with the column shift `R`.
    pub matrix_form: bool,
    /// Same product without the column shift (`R = L`); recorded, not required.
    pub matrix_form_unshifted: bool,
    /// `Σ_s binom(d,s)(q-1)^s p_r(s) p_{r'}(s) = 0` for `r ≠ r'`.
    pub orthogonality: bool,
}

impl RecurrenceReport {
    pub fn all_pass(&self) -> bool {
        self.closed_sum
            && self.adjacent
            && self.descent
            && self.binary_step_two.unwrap_or(true)
            && self.matrix_form
            && self.orthogonality
    }
}

/// Checks the Krawtchouk identities exactly at scheme size `d ≥ 1`.
pub fn verify_recurrences(d: usize, q: u32) -> Result<RecurrenceReport> {
    if d == 0 {
        return Err(Error::Precondition("identities need d ≥ 1".into()));
    }
    let p = KrawtchoukTable::new(d, q)?;
    let prev = KrawtchoukTable::new(d - 1, q)?;
    let qb = BigInt::from(q);

    let mut closed_sum = true;
    for s in 0..=d {
        for r in 0..=d {
            let a = krawtchouk(d, q, r, s)?;
            closed_sum &= a == krawtchouk_gf(d, q, r, s)? && &a == p.get(r, s);
        }
    }

    let qm1 = BigInt::from(q - 1);
    let mut adjacent = true;
    for s in 1..=d {
        for r in 1..=d {
            let lhs = p.get(r, s) - p.get(r, s - 1) + &qm1 * p.get(r - 1, s) + p.get(r - 1, s - 1);
            adjacent &= lhs.is_zero();
        }
    }

    let mut descent = true;
    for s in 0..d {
        for r in 1..=d {
            descent &= p.get(r, s) - p.get(r, s + 1) == &qb * prev.get(r - 1, s);
        }
    }

    let binary_step_two = (q == 2 && d >= 2).then(|| {
        let mut ok = true;
        for s in 0..=d - 2 {
            for r in 2..=d {
                let rhs: BigInt = (0..=(r - 2).min(s))
                    .map(|h| big_pow(-2, h) * binomial(d - 2 - h, r - 2 - h) * binomial(s, h))
                    .sum::<BigInt>()
                    * 4;
                ok &= p.get(r - 1, s) - p.get(r - 1, s + 2) == rhs;
            }
        }
        ok
    });

    // (I - C) P has rows P[s] - P[s+1] (cyclically); L drops the last row.
    let n = d + 1;
    let diff: Vec<Vec<BigInt>> =
        (0..n).map(|s| (0..n).map(|r| &p.values[s][r] - &p.values[(s + 1) % n][r]).collect()).collect();
    let padded = |s: usize, r: usize| -> BigInt {
        if s < d && r < d {
            &qb * prev.get(r, s)
        } else {
            BigInt::zero()
        }
    };
    let mut matrix_form = true;
    let mut matrix_form_unshifted = true;
    for s in 0..n {
        for r in 0..n {
            let shifted = if s < d && r < d { diff[s][r + 1].clone() } else { BigInt::zero() };
            let unshifted = if s < d && r < d { diff[s][r].clone() } else { BigInt::zero() };
            matrix_form &= shifted == padded(s, r);
            matrix_form_unshifted &= unshifted == padded(s, r);
        }
    }

    let weights: Vec<BigInt> = (0..=d).map(|s| binomial(d, s) * big_pow(q as i64 - 1, s)).collect();
    let mut orthogonality = true;
    for r in 0..=d {
        for r2 in r + 1..=d {
            let sum: BigInt = (0..=d).map(|s| &weights[s] * p.get(r, s) * p.get(r2, s)).sum();
            orthogonality &= sum.is_zero();
        }
    }

    Ok(RecurrenceReport { d, q, closed_sum, adjacent, descent, binary_step_two, matrix_form, matrix_form_unshifted, orthogonality })
}
