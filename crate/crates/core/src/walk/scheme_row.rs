use num_bigint::BigInt;
use num_traits::ToPrimitive;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::arith::{big_pow, binomial};
use crate::cyclotomic::GroupRing;
use crate::error::{Error, Result};
use crate::scheme::KrawtchoukTable;
use crate::verdict::{Method, MixingVerdict};

use super::WalkTime;

/// Transition amplitudes of a Hamming-scheme graph, one per weight class:
/// `U(t)_{0,g} = q^{-d} Σ_s e^{iθ_s t} p_s(wt g)`.
#[derive(Clone, Debug)]
pub struct SchemeRow {
    d: usize,
    q: u32,
    /// `S_w = Σ_s p_s(w) ζ_N^{θ_s·num}` for `w = 0..=d`.
    sums: Vec<GroupRing<BigInt>>,
}

impl SchemeRow {
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn class_sum(&self, w: usize) -> &GroupRing<BigInt> {
        &self.sums[w]
    }

    /// `U(t)_{0,g}` for any `g` of weight `w`.
    pub fn amplitude(&self, w: usize) -> Complex64 {
        let scale = BigInt::from(self.q).pow(self.d as u32);
        let (re, im) = self.sums[w]
            .coeffs()
            .iter()
            .enumerate()
            .fold((0.0f64, 0.0f64), |(re, im), (e, c)| {
                let ratio = ratio_f64(c, &scale);
                let angle = 2.0 * std::f64::consts::PI * e as f64 / self.sums[w].order() as f64;
                (re + ratio * angle.cos(), im + ratio * angle.sin())
            });
        Complex64::new(re, im)
    }

    pub fn amplitudes(&self) -> Vec<Complex64> {
        (0..=self.d).map(|w| self.amplitude(w)).collect()
    }

    /// Flat iff `|S_w|^2 = q^d` exactly for every class.
    pub fn verdict(&self) -> MixingVerdict {
        let target = BigInt::from(self.q).pow(self.d as u32);
        let results: Vec<(bool, f64)> = self
            .sums
            .par_iter()
            .map(|s| {
                let norm = s.norm_sqr();
                if norm.is_integer(&target) {
                    (true, 0.0)
                } else {
                    let value = norm.lift();
                    let re: f64 = value
                        .coeffs()
                        .iter()
                        .enumerate()
                        .map(|(e, c)| {
                            ratio_f64(c, &target) * (2.0 * std::f64::consts::PI * e as f64 / value.order() as f64).cos()
                        })
                        .sum();
                    (false, (re - 1.0).abs())
                }
            })
            .collect();
        let flat = results.iter().all(|r| r.0);
        let dev = results.iter().map(|r| r.1).fold(0.0, f64::max);
        MixingVerdict::exact(flat, dev, Method::SchemeClass)
    }

    /// Exact row unitarity: `Σ_w binom(d,w)(q-1)^w |S_w|^2 = q^{2d}`.
    pub fn is_unit(&self) -> bool {
        let order = self.sums[0].order();
        let mut total = GroupRing::<BigInt>::zero(order);
        for (w, s) in self.sums.iter().enumerate() {
            let mult = binomial(self.d, w) * big_pow(self.q as i64 - 1, w);
            total.add_scaled_shift(&s.mul(&s.conj()), 0, &mult);
        }
        total.reduce().is_integer(&BigInt::from(self.q).pow(2 * self.d as u32))
    }
}

/// `c / scale` as a double without overflowing either operand.
fn ratio_f64(c: &BigInt, scale: &BigInt) -> f64 {
    let shift = scale.bits().saturating_sub(60);
    let c = (c >> shift).to_f64().unwrap_or(0.0);
    let s = (scale >> shift).to_f64().unwrap_or(1.0);
    c / s
}

/// Class amplitudes of the walk with per-class eigenvalues `θ_0..θ_d`
/// (eigenvalue `θ_s` on characters of weight `s`) at `t = 2π·num/den`.
pub fn scheme_transition_class(d: usize, q: u32, theta: &[BigInt], t: &WalkTime) -> Result<SchemeRow> {
    if theta.len() != d + 1 {
        return Err(Error::DimensionMismatch(d + 1, theta.len()));
    }
    let (num, den) = t
        .as_rational()
        .ok_or_else(|| Error::Precondition("class amplitudes need a rational multiple of 2π".into()))?;
    let order = u32::try_from(den).map_err(|_| Error::Unsupported(format!("denominator {den} too large")))?;
    let table = KrawtchoukTable::new(d, q)?;
    let n = BigInt::from(den);
    let exps: Vec<i64> = theta
        .iter()
        .map(|th| {
            let e = ((th * num) % &n + &n) % &n;
            e.to_i64().expect("reduced exponent fits")
        })
        .collect();
    let sums = (0..=d)
        .into_par_iter()
        .map(|w| {
            let mut g = GroupRing::<BigInt>::zero(order);
            for (s, &e) in exps.iter().enumerate() {
                g.add_term(e, table.get(s, w).clone());
            }
            g
        })
        .collect();
    Ok(SchemeRow { d, q, sums })
}
