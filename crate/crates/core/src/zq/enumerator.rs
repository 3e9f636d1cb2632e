use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scheme::krawtchouk;

use super::submodule::{Coset, Submodule};
use super::vector::ZqVector;

/// Something whose elements can be listed: a submodule or one of its cosets.
pub trait ElementSet {
    fn modulus(&self) -> u32;
    fn length(&self) -> usize;
    fn members(&self) -> Result<Vec<ZqVector>>;
}

impl ElementSet for Submodule {
    fn modulus(&self) -> u32 {
        self.q()
    }
    fn length(&self) -> usize {
        self.dim()
    }
    fn members(&self) -> Result<Vec<ZqVector>> {
        Ok(self.elements()?.to_vec())
    }
}

impl ElementSet for Coset {
    fn modulus(&self) -> u32 {
        self.base.q()
    }
    fn length(&self) -> usize {
        self.base.dim()
    }
    fn members(&self) -> Result<Vec<ZqVector>> {
        self.elements()
    }
}

/// Homogeneous weight enumerator stored as counts: `counts[w]` elements of weight `w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightEnumerator {
    pub counts: Vec<u64>,
}

impl WeightEnumerator {
    pub fn from_vectors<'a>(d: usize, vs: impl IntoIterator<Item = &'a ZqVector>) -> Self {
        let mut counts = vec![0u64; d + 1];
        for v in vs {
            counts[v.weight()] += 1;
        }
        WeightEnumerator { counts }
    }

    /// Length `d` of the code.
    pub fn length(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Counts of weights modulo three.
    pub fn class_triple(&self) -> WeightClassTriple {
        let mut n = [0u64; 3];
        for (w, &c) in self.counts.iter().enumerate() {
            n[w % 3] += c;
        }
        WeightClassTriple { n0: n[0], n1: n[1], n2: n[2] }
    }
}

/// Numbers of elements with weight ≡ 0, 1, 2 (mod 3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightClassTriple {
    pub n0: u64,
    pub n1: u64,
    pub n2: u64,
}

impl WeightClassTriple {
    pub fn total(&self) -> u64 {
        self.n0 + self.n1 + self.n2
    }

    /// `n0 n1 + n0 n2 + n1 n2`.
    pub fn pair_sum(&self) -> u64 {
        self.n0 * self.n1 + self.n0 * self.n2 + self.n1 * self.n2
    }

    /// The triple in non-descending order.
    pub fn sorted(&self) -> [u64; 3] {
        let mut t = [self.n0, self.n1, self.n2];
        t.sort_unstable();
        t
    }
}

pub fn weight_enumerator<S: ElementSet + ?Sized>(s: &S) -> Result<WeightEnumerator> {
    let members = s.members()?;
    Ok(WeightEnumerator::from_vectors(s.length(), &members))
}

pub fn weight_class_triple<S: ElementSet + ?Sized>(s: &S) -> Result<WeightClassTriple> {
    Ok(weight_enumerator(s)?.class_triple())
}

/// `W_{Γ⊥}(x, y) = W_Γ(x + (q-1)y, x - y) / |Γ|`, expanded through Krawtchouk values.
pub fn macwilliams_transform(w: &WeightEnumerator, size: u64, q: u32, d: usize) -> Result<WeightEnumerator> {
    if w.counts.len() != d + 1 {
        return Err(Error::DimensionMismatch(d + 1, w.counts.len()));
    }
    if w.total() != size || size == 0 {
        return Err(Error::Precondition(format!(
            "enumerator total {} does not match size {size}",
            w.total()
        )));
    }
    let size_big = BigInt::from(size);
    let mut counts = Vec::with_capacity(d + 1);
    for j in 0..=d {
        let mut acc = BigInt::zero();
        for (wt, &c) in w.counts.iter().enumerate() {
            if c != 0 {
                acc += krawtchouk(d, q, j, wt)? * BigInt::from(c);
            }
        }
        let (quot, rem) = acc.div_rem(&size_big);
        if !rem.is_zero() || quot < BigInt::zero() {
            return Err(Error::NonIntegralCount);
        }
        counts.push(quot.to_u64().ok_or(Error::NonIntegralCount)?);
    }
    Ok(WeightEnumerator { counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zq::all_vectors;

    #[test]
    fn repetition_code_enumerator() {
        for (q, d) in [(2u32, 5usize), (3, 4), (4, 3)] {
            let g = Submodule::cyclic(ZqVector::ones(q, d));
            let w = weight_enumerator(&g).unwrap();
            let mut expected = vec![0u64; d + 1];
            expected[0] = 1;
            expected[d] = q as u64 - 1;
            assert_eq!(w.counts, expected);
        }
    }

    #[test]
    fn zero_module_enumerator_and_triple() {
        let z = Submodule::zero(3, 4);
        assert_eq!(weight_enumerator(&z).unwrap().counts, vec![1, 0, 0, 0, 0]);
        assert_eq!(weight_class_triple(&z).unwrap(), WeightClassTriple { n0: 1, n1: 0, n2: 0 });
    }

    #[test]
    fn cyclic_triple_weight_one_mod_three() {
        let a = ZqVector::new(3, &[1, 2, 1, 1, 0]).unwrap();
        let t = weight_class_triple(&Submodule::cyclic(a)).unwrap();
        assert_eq!(t, WeightClassTriple { n0: 1, n1: 2, n2: 0 });
    }

    #[test]
    fn macwilliams_of_repetition_code() {
        // (1/q)((x+(q-1)y)^d + (q-1)(x-y)^d), expanded by hand for q = 3, d = 4:
        // x^4 coefficient (1+2)/3 = 1; y^1: (4*2 - 2*4)/3 = 0; y^2: (6*4 + 2*6)/3 = 12;
        // y^3: (4*8 - 2*4)/3 = 8; y^4: (16 + 2)/3 = 6.
        let g = Submodule::cyclic(ZqVector::ones(3, 4));
        let w = weight_enumerator(&g).unwrap();
        let dual = macwilliams_transform(&w, 3, 3, 4).unwrap();
        assert_eq!(dual.counts, vec![1, 0, 12, 8, 6]);
    }

    #[test]
    fn macwilliams_whole_space_is_zero_module() {
        let w = weight_enumerator(&Submodule::whole_space(3, 4)).unwrap();
        let dual = macwilliams_transform(&w, 81, 3, 4).unwrap();
        assert_eq!(dual.counts, vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn macwilliams_rejects_invalid_enumerators() {
        let w = WeightEnumerator { counts: vec![1, 1, 0] };
        assert_eq!(macwilliams_transform(&w, 2, 3, 2), Err(Error::NonIntegralCount));
        assert!(macwilliams_transform(&w, 3, 3, 2).is_err());
    }

    #[test]
    fn macwilliams_holds_for_free_z4_modules() {
        let g = Submodule::cyclic(ZqVector::new(4, &[1, 1, 1, 2]).unwrap());
        let w = weight_enumerator(&g).unwrap();
        let direct: Vec<ZqVector> = all_vectors(4, 4)
            .filter(|a| g.elements().unwrap().iter().all(|c| a.inner(c).unwrap() == 0))
            .collect();
        let expected = WeightEnumerator::from_vectors(4, &direct);
        assert_eq!(macwilliams_transform(&w, 4, 4, 4).unwrap(), expected);
    }
}
