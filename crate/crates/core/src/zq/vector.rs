use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `Z_q^d`, every coordinate reduced into `[0, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZqVector {
    q: u32,
    coords: Vec<u32>,
}

pub(crate) fn check_modulus(q: u32) -> Result<()> {
    if q < 2 {
        Err(Error::InvalidModulus(q))
    } else {
        Ok(())
    }
}

impl ZqVector {
    /// Builds a vector from arbitrary integers, reducing each modulo `q`.
    pub fn new(q: u32, coords: &[i64]) -> Result<Self> {
        check_modulus(q)?;
        if coords.is_empty() {
            return Err(Error::Precondition("vector length must be at least one".into()));
        }
        let coords = coords.iter().map(|&c| c.rem_euclid(q as i64) as u32).collect();
        Ok(ZqVector { q, coords })
    }

    pub fn from_residues(q: u32, coords: Vec<u32>) -> Result<Self> {
        check_modulus(q)?;
        if coords.is_empty() {
            return Err(Error::Precondition("vector length must be at least one".into()));
        }
        let coords = coords.into_iter().map(|c| c % q).collect();
        Ok(ZqVector { q, coords })
    }

    pub(crate) fn from_reduced(q: u32, coords: Vec<u32>) -> Self {
        debug_assert!(coords.iter().all(|&c| c < q));
        ZqVector { q, coords }
    }

    pub fn zero(q: u32, d: usize) -> Self {
        ZqVector { q, coords: vec![0; d] }
    }

    /// The all-ones vector.
    pub fn ones(q: u32, d: usize) -> Self {
        ZqVector { q, coords: vec![1; d] }
    }

    /// The standard basis vector `e_j` (zero-based `j`).
    pub fn basis(q: u32, d: usize, j: usize) -> Self {
        let mut coords = vec![0; d];
        coords[j] = 1;
        ZqVector { q, coords }
    }

    /// Inverse of [`ZqVector::index`].
    pub fn from_index(q: u32, d: usize, mut index: usize) -> Self {
        let mut coords = vec![0; d];
        for c in coords.iter_mut() {
            *c = (index % q as usize) as u32;
            index /= q as usize;
        }
        ZqVector { q, coords }
    }

    /// Mixed-radix index with the first coordinate least significant.
    pub fn index(&self) -> usize {
        self.coords
            .iter()
            .rev()
            .fold(0usize, |acc, &c| acc * self.q as usize + c as usize)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn weight(&self) -> usize {
        self.coords.iter().filter(|&&c| c != 0).count()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.coords[i] != 0).collect()
    }

    fn check_compatible(&self, other: &ZqVector) -> Result<()> {
        if self.q != other.q {
            return Err(Error::ModulusMismatch(self.q, other.q));
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(())
    }

    pub fn inner(&self, other: &ZqVector) -> Result<u32> {
        self.check_compatible(other)?;
        Ok(self.inner_unchecked(other))
    }

    pub(crate) fn inner_unchecked(&self, other: &ZqVector) -> u32 {
        let q = self.q as u64;
        let s = self
            .coords
            .iter()
            .zip(&other.coords)
            .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % q);
        s as u32
    }

    pub fn add(&self, other: &ZqVector) -> Result<ZqVector> {
        self.check_compatible(other)?;
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &ZqVector) -> ZqVector {
        let q = self.q;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| (a + b) % q)
            .collect();
        ZqVector { q, coords }
    }

    pub fn sub(&self, other: &ZqVector) -> Result<ZqVector> {
        self.check_compatible(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn neg(&self) -> ZqVector {
        let q = self.q;
        ZqVector { q, coords: self.coords.iter().map(|&a| (q - a) % q).collect() }
    }

    pub fn scale(&self, lambda: u32) -> ZqVector {
        let q = self.q as u64;
        let l = lambda as u64 % q;
        ZqVector {
            q: self.q,
            coords: self.coords.iter().map(|&a| (a as u64 * l % q) as u32).collect(),
        }
    }

    /// Parses comma-separated residues such as `"1,2,0"`; negative entries are reduced.
    pub fn parse(q: u32, s: &str) -> Result<ZqVector> {
        let coords = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad residue {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ZqVector::new(q, &coords)
    }
}

impl fmt::Display for ZqVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Number of nonzero coordinates.
pub fn hamming_weight(v: &ZqVector) -> usize {
    v.weight()
}

/// `Σ u_i v_i mod q`.
pub fn inner_product(u: &ZqVector, v: &ZqVector) -> Result<u32> {
    u.inner(v)
}

/// Parses a generator matrix: one vector per line (or `;`-separated), blank lines
/// and `#` comments ignored.
pub fn parse_vectors(q: u32, text: &str) -> Result<Vec<ZqVector>> {
    let vectors: Vec<ZqVector> = text
        .split(['\n', ';'])
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| ZqVector::parse(q, l))
        .collect::<Result<_>>()?;
    if let Some(first) = vectors.first() {
        if let Some(bad) = vectors.iter().find(|v| v.dim() != first.dim()) {
            return Err(Error::DimensionMismatch(first.dim(), bad.dim()));
        }
    }
    Ok(vectors)
}

/// Iterator over every vector of `Z_q^d` in index order.
pub fn all_vectors(q: u32, d: usize) -> impl Iterator<Item = ZqVector> {
    let n = crate::limits::pow_saturating(q, d) as usize;
    (0..n).map(move |i| ZqVector::from_index(q, d, i))
}

/// Multiplicative inverse of `a` modulo `q`, if `a` is a unit.
pub fn unit_inverse(a: u32, q: u32) -> Option<u32> {
    let a = a % q;
    (1..q).find(|&x| (a as u64 * x as u64) % q as u64 == 1)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}
