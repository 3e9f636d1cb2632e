//! Cayley graphs over `Z_q^d`: connection sets, linearity, Hamming
//! quotients and character eigenvalues.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycloInt, GroupRing};
use crate::error::{Error, Result};
use crate::limits::{check_cap, pow_saturating};
use crate::zq::{all_vectors, check_modulus, is_prime, minimum_distance, Submodule, ZqVector};

/// An identity-free, inverse-closed subset of `Z_q^d` (checked by
/// [`ConnectionSet::validate`]); elements are kept sorted and distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ConnectionSetJson", into = "ConnectionSetJson")]
pub struct ConnectionSet {
    q: u32,
    d: usize,
    elements: Vec<ZqVector>,
}

/// Wire format: `{q, d, elements: [[...], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct ConnectionSetJson {
    q: u32,
    d: usize,
    elements: Vec<Vec<u32>>,
}

impl TryFrom<ConnectionSetJson> for ConnectionSet {
    type Error = Error;

    fn try_from(j: ConnectionSetJson) -> Result<Self> {
        let elements = j
            .elements
            .into_iter()
            .map(|c| ZqVector::from_residues(j.q, c))
            .collect::<Result<Vec<_>>>()?;
        ConnectionSet::new(j.q, j.d, elements)
    }
}

impl From<ConnectionSet> for ConnectionSetJson {
    fn from(c: ConnectionSet) -> Self {
        ConnectionSetJson { q: c.q, d: c.d, elements: c.elements.iter().map(|v| v.coords().to_vec()).collect() }
    }
}

/// Outcome of [`ConnectionSet::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub contains_identity: bool,
    pub missing_inverses: Vec<ZqVector>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        !self.contains_identity && self.missing_inverses.is_empty()
    }
}

impl ConnectionSet {
    pub fn new(q: u32, d: usize, mut elements: Vec<ZqVector>) -> Result<Self> {
        check_modulus(q)?;
        if d == 0 {
            return Err(Error::Precondition("dimension must be at least one".into()));
        }
        for v in &elements {
            if v.q() != q {
                return Err(Error::ModulusMismatch(q, v.q()));
            }
            if v.dim() != d {
                return Err(Error::DimensionMismatch(d, v.dim()));
            }
        }
        elements.sort();
        elements.dedup();
        Ok(ConnectionSet { q, d, elements })
    }

    /// All nonzero multiples `λg` of the given vectors.
    pub fn from_multiples(q: u32, d: usize, gens: &[ZqVector]) -> Result<Self> {
        let elements = gens
            .iter()
            .flat_map(|g| (1..q).map(move |l| g.scale(l)))
            .filter(|v| !v.is_zero())
            .collect();
        Self::new(q, d, elements)
    }

    /// Nonzero multiples of the standard basis: the Hamming graph `H(d, q)`.
    pub fn hamming(d: usize, q: u32) -> Result<Self> {
        check_modulus(q)?;
        let basis: Vec<ZqVector> = (0..d).map(|j| ZqVector::basis(q, d, j)).collect();
        Self::from_multiples(q, d, &basis)
    }

    /// All vectors whose weight lies in `classes`: a union of distance graphs
    /// of `H(d, q)`.
    pub fn distance_classes(d: usize, q: u32, classes: &[usize]) -> Result<Self> {
        check_modulus(q)?;
        check_cap(pow_saturating(q, d))?;
        let elements = all_vectors(q, d).filter(|v| v.weight() > 0 && classes.contains(&v.weight())).collect();
        Self::new(q, d, elements)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn elements(&self) -> &[ZqVector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, v: &ZqVector) -> bool {
        self.elements.binary_search(v).is_ok()
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport {
            contains_identity: self.elements.iter().any(|c| c.is_zero()),
            missing_inverses: self.elements.iter().map(|c| c.neg()).filter(|n| !self.contains(n)).collect(),
        }
    }

    /// `λc ∈ C ∪ {0}` for every scalar `λ` and `c ∈ C`.
    pub fn is_linear(&self) -> bool {
        self.elements
            .iter()
            .all(|c| (1..self.q).map(|l| c.scale(l)).all(|m| m.is_zero() || self.contains(&m)))
    }

    /// `C` generates `Z_q^d`; over `Z_4` this requires a unit-pivot basis.
    pub fn is_connected(&self) -> bool {
        match Submodule::new(self.q, self.d, self.elements.clone()).and_then(|s| s.rank()) {
            Ok(r) => r == self.d,
            Err(_) => false,
        }
    }
}

/// The connection set of `H(d, q)/Γ` on `Z_q^{d-s}`: nonzero multiples of the
/// columns of the systematic parity-check matrix of `Γ`.
pub fn quotient_connection_set(gamma: &Submodule) -> Result<ConnectionSet> {
    let (q, d) = (gamma.q(), gamma.dim());
    match minimum_distance(gamma) {
        Ok(md) if md < 3 => return Err(Error::DistanceTooSmall(md)),
        Ok(_) | Err(Error::ZeroModule) => {}
        Err(e) => return Err(e),
    }
    let pc = gamma.parity_check_matrix()?;
    let r = pc.rows.len();
    if r == 0 {
        return Err(Error::Precondition("quotient by the whole space has a single vertex".into()));
    }
    let columns = pc
        .columns(q)
        .into_iter()
        .map(|c| ZqVector::from_residues(q, c))
        .collect::<Result<Vec<_>>>()?;
    let set = ConnectionSet::from_multiples(q, r, &columns)?;
    if set.len() != d * (q as usize - 1) {
        return Err(Error::Precondition(format!(
            "quotient valency {} differs from d(q-1) = {}",
            set.len(),
            d * (q as usize - 1)
        )));
    }
    Ok(set)
}

/// `ψ_a(C) = Σ_{c∈C} ζ_q^{⟨a,c⟩}`, exactly in `Z[ζ_q]`.
pub fn character_eigenvalue(c: &ConnectionSet, a: &ZqVector) -> Result<CycloInt<i128>> {
    if a.q() != c.q {
        return Err(Error::ModulusMismatch(c.q, a.q()));
    }
    if a.dim() != c.d {
        return Err(Error::DimensionMismatch(c.d, a.dim()));
    }
    let mut g = GroupRing::<i128>::zero(c.q);
    for x in &c.elements {
        g.add_term(a.inner_unchecked(x) as i64, 1);
    }
    Ok(g.reduce())
}

/// `(q|C ∩ a⊥| - |C|)/(q - 1)`, the eigenvalue of a linear graph over a prime field.
pub fn linear_eigenvalue(c: &ConnectionSet, a: &ZqVector) -> Result<i64> {
    if !is_prime(c.q as u64) {
        return Err(Error::NotPrime(c.q as u64));
    }
    if !c.is_linear() {
        return Err(Error::NotLinear);
    }
    let orth = c.elements.iter().filter(|x| a.inner_unchecked(x) == 0).count() as i64;
    let q = c.q as i64;
    Ok((q * orth - c.len() as i64) / (q - 1))
}

/// Eigenvalues `θ_a` for every `a`, indexed by [`ZqVector::index`].
#[derive(Clone, Debug)]
pub struct EigenvalueTable {
    pub exact: Vec<CycloInt<i128>>,
    /// Present when every eigenvalue is a rational integer.
    pub integers: Option<Vec<i64>>,
}

impl EigenvalueTable {
    pub fn real_values(&self) -> Vec<f64> {
        match &self.integers {
            Some(v) => v.iter().map(|&x| x as f64).collect(),
            None => self.exact.iter().map(|x| x.to_complex().re).collect(),
        }
    }
}

/// `X(Z_q^d, C)` with a lazily computed eigenvalue table.
#[derive(Debug)]
pub struct CayleyGraph {
    connection: ConnectionSet,
    table: OnceLock<EigenvalueTable>,
}

impl Clone for CayleyGraph {
    fn clone(&self) -> Self {
        CayleyGraph { connection: self.connection.clone(), table: self.table.clone() }
    }
}

impl CayleyGraph {
    pub fn new(connection: ConnectionSet) -> Result<Self> {
        let report = connection.validate();
        if !report.is_ok() {
            return Err(Error::Precondition(format!(
                "invalid connection set (identity: {}, missing inverses: {})",
                report.contains_identity,
                report.missing_inverses.len()
            )));
        }
        Ok(CayleyGraph { connection, table: OnceLock::new() })
    }

    pub fn hamming(d: usize, q: u32) -> Result<Self> {
        Self::new(ConnectionSet::hamming(d, q)?)
    }

    pub fn connection(&self) -> &ConnectionSet {
        &self.connection
    }

    pub fn q(&self) -> u32 {
        self.connection.q
    }

    pub fn dim(&self) -> usize {
        self.connection.d
    }

    pub fn valency(&self) -> usize {
        self.connection.len()
    }

    pub fn vertex_count(&self) -> Result<usize> {
        let n = pow_saturating(self.q(), self.dim());
        check_cap(n)?;
        Ok(n as usize)
    }

    /// Eigenvalues for all characters, computed once by a multidimensional
    /// discrete Fourier transform of the indicator of `C` over `Z[ζ_q]`.
    pub fn eigenvalues(&self) -> Result<&EigenvalueTable> {
        if let Some(t) = self.table.get() {
            return Ok(t);
        }
        let (q, d) = (self.q(), self.dim());
        let n = self.vertex_count()?;
        let mut data = vec![0i64; n * q as usize];
        for c in &self.connection.elements {
            data[c.index() * q as usize] = 1;
        }
        dft_group_ring(q, d, q, &mut data);
        let exact: Vec<CycloInt<i128>> = data
            .par_chunks(q as usize)
            .map(|chunk| {
                let mut g = GroupRing::<i128>::zero(q);
                for (e, &c) in chunk.iter().enumerate() {
                    if c != 0 {
                        g.add_term(e as i64, c as i128);
                    }
                }
                g.reduce()
            })
            .collect();
        let integers = exact.iter().map(|x| x.as_integer().map(|v| v as i64)).collect::<Option<Vec<_>>>();
        let _ = self.table.set(EigenvalueTable { exact, integers });
        Ok(self.table.get().expect("just set"))
    }
}

/// In-place transform `out[g] = Σ_a in[a] ζ_q^{⟨a,g⟩}` on group-ring vectors
/// of order `n` (a multiple of `q`), stored flat as `q^d` blocks of `n`
/// coefficients.
pub(crate) fn dft_group_ring(q: u32, d: usize, n: u32, data: &mut [i64]) {
    let (qu, nu) = (q as usize, n as usize);
    let step = nu / qu;
    let mut stride = 1usize;
    for _ in 0..d {
        let block = stride * qu * nu;
        data.par_chunks_mut(block).for_each(|chunk| {
            let mut line = vec![0i64; qu * nu];
            let mut out = vec![0i64; qu * nu];
            for low in 0..stride {
                for l in 0..qu {
                    let off = (low + l * stride) * nu;
                    line[l * nu..(l + 1) * nu].copy_from_slice(&chunk[off..off + nu]);
                }
                out.iter_mut().for_each(|x| *x = 0);
                for k in 0..qu {
                    let dst = &mut out[k * nu..(k + 1) * nu];
                    for l in 0..qu {
                        let shift = (l * k % qu) * step;
                        let src = &line[l * nu..(l + 1) * nu];
                        for (e, &c) in src.iter().enumerate() {
                            if c != 0 {
                                dst[(e + shift) % nu] += c;
                            }
                        }
                    }
                }
                for k in 0..qu {
                    let off = (low + k * stride) * nu;
                    chunk[off..off + nu].copy_from_slice(&out[k * nu..(k + 1) * nu]);
                }
            }
        });
        stride *= qu;
    }
}
