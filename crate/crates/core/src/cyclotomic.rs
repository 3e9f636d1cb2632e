//! Exact arithmetic in `Z[ζ_N] = Z[x]/(Φ_N)`.
//!
//! Values are accumulated in the group ring `Z[C_N]` (one coefficient per
//! power of `ζ_N`) and reduced modulo `Φ_N` through a shared table of
//! `x^e mod Φ_N`, so equality and norm tests are exact integer comparisons.

use std::collections::HashMap;
use std::fmt::Debug;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};

use crate::arith::divisors;

/// Coefficient types usable in cyclotomic arithmetic (`i128`, `BigInt`).
pub trait Coeff: Clone + Debug + PartialEq + Send + Sync + Signed + From<i64> + ToPrimitive + 'static {}

impl<T> Coeff for T where T: Clone + Debug + PartialEq + Send + Sync + Signed + From<i64> + ToPrimitive + 'static {}

fn poly_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn table_cache() -> &'static RwLock<HashMap<u32, Arc<CycloTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<CycloTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Quotient of `a` by the monic polynomial `b` (coefficients constant first);
/// panics in debug builds if the division is not exact.
fn div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let m = b.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![0i64; a.len() - m];
    for i in (0..quot.len()).rev() {
        let c = rem[i + m];
        quot[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                rem[i + j] -= c * bj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// Coefficients of `Φ_n`, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(p) = poly_cache().read().expect("cyclotomic cache poisoned").get(&n) {
        return p.clone();
    }
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in divisors(n as u64) {
        if d < n as u64 {
            p = div_monic(&p, &cyclotomic_polynomial(d as u32));
        }
    }
    let p = Arc::new(p);
    poly_cache().write().expect("cyclotomic cache poisoned").insert(n, p.clone());
    p
}

/// Reduction data for `Z[x]/(Φ_n)`: `powers[e] = x^e mod Φ_n` for `0 ≤ e < n`.
#[derive(Debug)]
pub struct CycloTable {
    pub n: u32,
    pub phi: usize,
    pub powers: Vec<Vec<i64>>,
}

/// The shared reduction table for `Φ_n`, built once per `n`.
pub fn table(n: u32) -> Arc<CycloTable> {
    if let Some(t) = table_cache().read().expect("cyclotomic cache poisoned").get(&n) {
        return t.clone();
    }
    let poly = cyclotomic_polynomial(n);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        let top = cur[phi - 1];
        let mut next = vec![0i64; phi];
        next[1..phi].copy_from_slice(&cur[..phi - 1]);
        if top != 0 {
            for i in 0..phi {
                next[i] -= top * poly[i];
            }
        }
        cur = next;
    }
    let t = Arc::new(CycloTable { n, phi, powers });
    table_cache().write().expect("cyclotomic cache poisoned").insert(n, t.clone());
    t
}

/// An element `Σ_e c_e ζ_n^e` of the group ring `Z[C_n]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupRing<T> {
    n: u32,
    coeffs: Vec<T>,
}

impl<T: Coeff> GroupRing<T> {
    pub fn zero(n: u32) -> Self {
        assert!(n >= 1, "group ring order must be positive");
        GroupRing { n, coeffs: vec![T::zero(); n as usize] }
    }

    pub fn monomial(n: u32, e: i64, c: T) -> Self {
        let mut g = Self::zero(n);
        g.add_term(e, c);
        g
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Adds `c ζ^e`.
    pub fn add_term(&mut self, e: i64, c: T) {
        let idx = e.rem_euclid(self.n as i64) as usize;
        self.coeffs[idx] = self.coeffs[idx].clone() + c;
    }

    pub fn add_assign(&mut self, other: &GroupRing<T>) {
        assert_eq!(self.n, other.n, "group ring order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a = a.clone() + b.clone();
            }
        }
    }

    /// Adds `c ζ^k · other`.
    pub fn add_scaled_shift(&mut self, other: &GroupRing<T>, k: i64, c: &T) {
        assert_eq!(self.n, other.n, "group ring order mismatch");
        let n = self.n as i64;
        for (e, b) in other.coeffs.iter().enumerate() {
            if !b.is_zero() {
                let idx = (e as i64 + k).rem_euclid(n) as usize;
                self.coeffs[idx] = self.coeffs[idx].clone() + b.clone() * c.clone();
            }
        }
    }

    pub fn mul(&self, other: &GroupRing<T>) -> GroupRing<T> {
        assert_eq!(self.n, other.n, "group ring order mismatch");
        let n = self.n as usize;
        let mut out = vec![T::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let k = (i + j) % n;
                    out[k] = out[k].clone() + a.clone() * b.clone();
                }
            }
        }
        GroupRing { n: self.n, coeffs: out }
    }

    /// Complex conjugate: `ζ^e ↦ ζ^{-e}`.
    pub fn conj(&self) -> GroupRing<T> {
        let n = self.n as usize;
        let mut out = vec![T::zero(); n];
        for (e, c) in self.coeffs.iter().enumerate() {
            out[(n - e) % n] = c.clone();
        }
        GroupRing { n: self.n, coeffs: out }
    }

    pub fn reduce(&self) -> CycloInt<T> {
        let t = table(self.n);
        let mut out = vec![T::zero(); t.phi];
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, &p) in t.powers[e].iter().enumerate() {
                if p != 0 {
                    out[i] = out[i].clone() + c.clone() * T::from(p);
                }
            }
        }
        CycloInt { n: self.n, coeffs: out }
    }

    /// `|x|^2` reduced into `Z[ζ_n]`.
    pub fn norm_sqr(&self) -> CycloInt<T> {
        self.mul(&self.conj()).reduce()
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.n as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| {
                let angle = 2.0 * std::f64::consts::PI * e as f64 / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), angle)
            })
            .sum()
    }
}

/// A reduced element of `Z[ζ_n]` in the power basis `1, ζ, …, ζ^{φ(n)-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CycloInt<T> {
    n: u32,
    coeffs: Vec<T>,
}

impl<T: Coeff> CycloInt<T> {
    pub fn from_integer(n: u32, c: T) -> Self {
        let phi = table(n).phi;
        let mut coeffs = vec![T::zero(); phi];
        coeffs[0] = c;
        CycloInt { n, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn lift(&self) -> GroupRing<T> {
        let mut g = GroupRing::zero(self.n);
        for (i, c) in self.coeffs.iter().enumerate() {
            g.coeffs[i] = c.clone();
        }
        g
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The value as a rational integer, when it is one.
    pub fn as_integer(&self) -> Option<T> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_integer(&self, value: &T) -> bool {
        self.as_integer().as_ref() == Some(value)
    }

    pub fn mul(&self, other: &CycloInt<T>) -> CycloInt<T> {
        self.lift().mul(&other.lift()).reduce()
    }

    pub fn add(&self, other: &CycloInt<T>) -> CycloInt<T> {
        assert_eq!(self.n, other.n, "cyclotomic order mismatch");
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        CycloInt { n: self.n, coeffs }
    }

    pub fn conj(&self) -> CycloInt<T> {
        self.lift().conj().reduce()
    }

    pub fn norm_sqr(&self) -> CycloInt<T> {
        self.lift().norm_sqr()
    }

    pub fn to_complex(&self) -> Complex64 {
        self.lift().to_complex()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient outside {-1, 0, 1}.
        assert!(cyclotomic_polynomial(105).contains(&-2));
        assert_eq!(cyclotomic_polynomial(105).len() - 1, 48);
    }

    #[test]
    fn zeta_sums_vanish() {
        for n in [2u32, 3, 4, 5, 6, 9, 12, 27] {
            let mut g = GroupRing::<i128>::zero(n);
            for e in 0..n as i64 {
                g.add_term(e, 1);
            }
            assert!(g.reduce().is_zero(), "n = {n}");
        }
    }

    #[test]
    fn eisenstein_norms() {
        // |ζ_3 + 2|^2 = 3 and |1 + i|^2 = 2.
        let mut g = GroupRing::<i128>::monomial(3, 1, 1);
        g.add_term(0, 2);
        assert!(g.norm_sqr().is_integer(&3));
        let mut h = GroupRing::<BigInt>::monomial(4, 0, BigInt::from(1));
        h.add_term(1, BigInt::from(1));
        assert!(h.norm_sqr().is_integer(&BigInt::from(2)));
    }

    #[test]
    fn reduction_matches_complex_value() {
        let mut g = GroupRing::<i128>::zero(36);
        for (e, c) in [(0, 3), (5, -2), (17, 7), (30, 1)] {
            g.add_term(e, c);
        }
        let z1 = g.to_complex();
        let z2 = g.reduce().to_complex();
        assert!((z1 - z2).norm() < 1e-12);
    }

    #[test]
    fn order_one_is_integers() {
        let mut g = GroupRing::<i128>::zero(1);
        g.add_term(5, 4);
        assert_eq!(g.reduce().as_integer(), Some(4));
    }
}
