use std::collections::HashMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::cyclotomic::{CycloInt, GroupRing};
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::verdict::{Method, MixingVerdict};
use crate::zq::{minimum_distance, Coset, Submodule, WeightEnumerator, ZqVector};

use super::WalkTime;

/// A transition amplitude: exactly `value / q^scale_exp` with `value ∈ Z[ζ_N]`,
/// or a complex double.
#[derive(Clone, Debug, PartialEq)]
pub enum UnitCircleValue {
    Exact { value: CycloInt<BigInt>, q: u32, scale_exp: u32 },
    Approx(Complex64),
}

impl UnitCircleValue {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            UnitCircleValue::Exact { value, q, scale_exp } => value.to_complex() / (*q as f64).powi(*scale_exp as i32),
            UnitCircleValue::Approx(z) => *z,
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            UnitCircleValue::Exact { value, q, scale_exp } => {
                UnitCircleValue::Exact { value: value.conj(), q: *q, scale_exp: *scale_exp }
            }
            UnitCircleValue::Approx(z) => UnitCircleValue::Approx(z.conj()),
        }
    }

    /// `|z|^2` as `(numerator, q^{2·scale_exp})` when exact and rational.
    pub fn exact_norm_sqr(&self) -> Option<(BigInt, BigInt)> {
        match self {
            UnitCircleValue::Exact { value, q, scale_exp } => {
                value.norm_sqr().as_integer().map(|n| (n, BigInt::from(*q).pow(2 * scale_exp)))
            }
            UnitCircleValue::Approx(_) => None,
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        match self.exact_norm_sqr() {
            Some((n, d)) => n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN),
            None => self.to_complex().norm_sqr(),
        }
    }
}

/// Precomputed per-weight terms `e^{-idt} (x+q-1)^{d-w} (x-1)^w` with
/// `x = e^{iqt}`, so that a coset entry is `q^{-d} Σ_w A_w · term_w`.
#[derive(Clone, Debug)]
pub struct MullinEvaluator {
    q: u32,
    d: usize,
    terms: Terms,
}

#[derive(Clone, Debug)]
enum Terms {
    Exact(Vec<GroupRing<BigInt>>),
    Approx(Vec<Complex64>),
}

impl MullinEvaluator {
    pub fn new(q: u32, d: usize, t: &WalkTime) -> Result<Self> {
        crate::zq::check_modulus(q)?;
        let terms = match t.as_rational() {
            Some((num, den)) => {
                let order = u32::try_from(den).map_err(|_| Error::Unsupported(format!("denominator {den} too large")))?;
                let n = den as i128;
                let terms = (0..=d)
                    .map(|w| {
                        let p = IntPoly::from_i64(&[q as i64 - 1, 1])
                            .pow(d - w)
                            .mul(&IntPoly::from_i64(&[-1, 1]).pow(w));
                        let mut g = GroupRing::<BigInt>::zero(order);
                        for (j, c) in p.coeffs().iter().enumerate() {
                            let e = ((q as i128 * j as i128 - d as i128) * num as i128).rem_euclid(n);
                            g.add_term(e as i64, c.clone());
                        }
                        g
                    })
                    .collect();
                Terms::Exact(terms)
            }
            None => {
                let time = t.value();
                let x = Complex64::from_polar(1.0, q as f64 * time);
                let phase = Complex64::from_polar(1.0, -(d as f64) * time);
                let a = x + (q as f64 - 1.0);
                let b = x - 1.0;
                Terms::Approx((0..=d).map(|w| phase * a.powu((d - w) as u32) * b.powu(w as u32)).collect())
            }
        };
        Ok(MullinEvaluator { q, d, terms })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.terms, Terms::Exact(_))
    }

    /// The amplitude `U(t)_{0,v}` for a coset with weight enumerator `w`.
    pub fn entry(&self, w: &WeightEnumerator) -> Result<UnitCircleValue> {
        if w.length() != self.d {
            return Err(Error::DimensionMismatch(self.d, w.length()));
        }
        Ok(match &self.terms {
            Terms::Exact(terms) => {
                let mut acc = GroupRing::<BigInt>::zero(terms[0].order());
                for (term, &count) in terms.iter().zip(&w.counts) {
                    if count != 0 {
                        acc.add_scaled_shift(term, 0, &BigInt::from(count));
                    }
                }
                UnitCircleValue::Exact { value: acc.reduce(), q: self.q, scale_exp: self.d as u32 }
            }
            Terms::Approx(terms) => {
                let sum: Complex64 = terms.iter().zip(&w.counts).map(|(t, &c)| t * c as f64).sum();
                UnitCircleValue::Approx(sum / (self.q as f64).powi(self.d as i32))
            }
        })
    }

    /// Whether a coset with enumerator `w` gets squared amplitude `|Γ|/q^d`;
    /// returns the verdict and the deviation `| (q^d/|Γ|)|U|^2 - 1 |`.
    pub fn coset_is_flat(&self, w: &WeightEnumerator) -> Result<(bool, f64)> {
        let size = w.total();
        let value = self.entry(w)?;
        let cosets = (self.q as f64).powi(self.d as i32) / size as f64;
        let dev = (value.norm_sqr() * cosets - 1.0).abs();
        Ok(match value.exact_norm_sqr() {
            // |W|^2 = q^d |Γ|  ⇔  numerator = q^d · |Γ|.
            Some((numerator, _)) => {
                let flat = numerator == BigInt::from(self.q).pow(self.d as u32) * BigInt::from(size);
                (flat, if flat { 0.0 } else { dev })
            }
            None => (dev <= crate::verdict::FLOAT_TOLERANCE, dev),
        })
    }
}

fn check_distance(gamma: &Submodule) -> Result<()> {
    if gamma.size()? > 1 {
        let dist = minimum_distance(gamma)?;
        if dist < 3 {
            return Err(Error::DistanceTooSmall(dist));
        }
    }
    Ok(())
}

/// `U(t)_{0,v} = (e^{-it}/q)^d Σ_{a∈Γ+v} (e^{qit}+q-1)^{d-wt(a)} (e^{qit}-1)^{wt(a)}`
/// on the quotient `H(d,q)/Γ`.
pub fn mullin_entry(gamma: &Submodule, v: &ZqVector, t: &WalkTime) -> Result<UnitCircleValue> {
    check_distance(gamma)?;
    let coset = Coset::new(gamma.clone(), v.clone())?;
    let w = WeightEnumerator::from_vectors(gamma.dim(), &coset.elements()?);
    MullinEvaluator::new(gamma.q(), gamma.dim(), t)?.entry(&w)
}

/// Weight enumerators of all cosets, in transversal order.
pub fn coset_enumerators(gamma: &Submodule) -> Result<Vec<WeightEnumerator>> {
    let elements = gamma.elements()?;
    let d = gamma.dim();
    Ok(gamma
        .coset_transversal()?
        .par_iter()
        .map(|rep| {
            let mut counts = vec![0u64; d + 1];
            for g in elements {
                counts[g.add_unchecked(rep).weight()] += 1;
            }
            WeightEnumerator { counts }
        })
        .collect())
}

/// Flatness of the quotient walk from Mullin's formula: every coset must
/// satisfy `|W_v|^2 = q^d |Γ|` (after the common phase).  Distinct coset
/// enumerators are evaluated once each.
pub fn mullin_verdict(gamma: &Submodule, t: &WalkTime) -> Result<MixingVerdict> {
    check_distance(gamma)?;
    let eval = MullinEvaluator::new(gamma.q(), gamma.dim(), t)?;
    let mut seen: HashMap<WeightEnumerator, (bool, f64)> = HashMap::new();
    for w in coset_enumerators(gamma)? {
        if !seen.contains_key(&w) {
            let r = eval.coset_is_flat(&w)?;
            seen.insert(w, r);
        }
    }
    let flat = seen.values().all(|r| r.0);
    let dev = seen.values().map(|r| r.1).fold(0.0, f64::max);
    Ok(if eval.is_exact() {
        MixingVerdict::exact(flat, dev, Method::Mullin)
    } else {
        MixingVerdict::from_deviation(dev, Method::Mullin)
    })
}

/// Squared amplitudes over all cosets sum to one (row unitarity).
pub fn mullin_row_norm(gamma: &Submodule, t: &WalkTime) -> Result<f64> {
    let eval = MullinEvaluator::new(gamma.q(), gamma.dim(), t)?;
    let mut total = 0.0;
    for w in coset_enumerators(gamma)? {
        total += eval.entry(&w)?.norm_sqr();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::{quotient_connection_set, CayleyGraph};
    use crate::walk::transition_row;

    #[test]
    fn trivial_module_is_hamming_return_amplitude() {
        let gamma = Submodule::zero(3, 3);
        let t = WalkTime::real(0.41);
        let z = mullin_entry(&gamma, &ZqVector::zero(3, 3), &t).unwrap().to_complex();
        let tv = t.value();
        let expected = (Complex64::from_polar(1.0, -tv) / 3.0 * (Complex64::from_polar(1.0, 3.0 * tv) + 2.0)).powu(3);
        assert!((z - expected).norm() < 1e-12);
    }

    #[test]
    fn folded_matches_quotient_row() {
        let gamma = Submodule::cyclic(ZqVector::ones(3, 4));
        let t = WalkTime::two_pi_over(9);
        let x = CayleyGraph::new(quotient_connection_set(&gamma).unwrap()).unwrap();
        let row = transition_row(&x, &t).unwrap();
        let reps = gamma.coset_transversal().unwrap();
        let pc = gamma.parity_check_matrix().unwrap();
        for rep in &reps {
            let syn = ZqVector::from_residues(3, pc.syndrome(rep)).unwrap();
            let m = mullin_entry(&gamma, rep, &t).unwrap().to_complex();
            assert!((m - row.amplitude(syn.index())).norm() < 1e-9);
        }
        assert!(mullin_verdict(&gamma, &t).unwrap().flat);
        assert!((mullin_row_norm(&gamma, &t).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn distance_precondition() {
        let gamma = Submodule::cyclic(ZqVector::new(3, &[1, 1, 0]).unwrap());
        assert!(mullin_verdict(&gamma, &WalkTime::two_pi_over(9)).is_err());
    }
}
