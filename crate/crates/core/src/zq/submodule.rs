use std::collections::HashSet;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::limits::{check_cap, pow_saturating};

use super::vector::{all_vectors, check_modulus, unit_inverse, ZqVector};

/// Reduced generators with unit pivots: `basis[i][pivots[j]] = δ_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystematicForm {
    pub pivots: Vec<usize>,
    pub basis: Vec<ZqVector>,
}

impl SystematicForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Parity-check matrix `Q` with `Q·M = 0`.
///
/// `permutation` lists the coordinates so that in permuted order `Q = (I | -A)`:
/// first the `d - s` information coordinates, then the `s` pivot coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityCheck {
    pub rows: Vec<ZqVector>,
    pub permutation: Vec<usize>,
}

impl ParityCheck {
    /// `Q v`, an element of `Z_q^{d-s}`.
    pub fn syndrome(&self, v: &ZqVector) -> Vec<u32> {
        self.rows.iter().map(|r| r.inner_unchecked(v)).collect()
    }

    /// Columns of `Q`, one vector of `Z_q^{d-s}` per coordinate of `Z_q^d`.
    pub fn columns(&self, q: u32) -> Vec<Vec<u32>> {
        let d = self.permutation.len();
        (0..d)
            .map(|j| self.rows.iter().map(|r| r.coords()[j] % q).collect())
            .collect()
    }
}

/// A submodule of `Z_q^d` given by generators (the columns of `M`).
#[derive(Debug)]
pub struct Submodule {
    q: u32,
    d: usize,
    generators: Vec<ZqVector>,
    elements: OnceLock<Vec<ZqVector>>,
}

impl Clone for Submodule {
    fn clone(&self) -> Self {
        let elements = OnceLock::new();
        if let Some(e) = self.elements.get() {
            let _ = elements.set(e.clone());
        }
        Submodule { q: self.q, d: self.d, generators: self.generators.clone(), elements }
    }
}

impl PartialEq for Submodule {
    /// Equality as sets, decided by enumeration.
    fn eq(&self, other: &Self) -> bool {
        if self.q != other.q || self.d != other.d {
            return false;
        }
        match (self.elements(), other.elements()) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}

impl Submodule {
    pub fn new(q: u32, d: usize, generators: Vec<ZqVector>) -> Result<Self> {
        check_modulus(q)?;
        if d == 0 {
            return Err(Error::Precondition("dimension must be at least one".into()));
        }
        for g in &generators {
            if g.q() != q {
                return Err(Error::ModulusMismatch(q, g.q()));
            }
            if g.dim() != d {
                return Err(Error::DimensionMismatch(d, g.dim()));
            }
        }
        Ok(Submodule { q, d, generators, elements: OnceLock::new() })
    }

    pub fn zero(q: u32, d: usize) -> Self {
        Submodule { q, d, generators: Vec::new(), elements: OnceLock::new() }
    }

    /// `⟨v⟩`.
    pub fn cyclic(v: ZqVector) -> Self {
        Submodule { q: v.q(), d: v.dim(), generators: vec![v], elements: OnceLock::new() }
    }

    pub fn whole_space(q: u32, d: usize) -> Self {
        let gens = (0..d).map(|j| ZqVector::basis(q, d, j)).collect();
        Submodule { q, d, generators: gens, elements: OnceLock::new() }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn generators(&self) -> &[ZqVector] {
        &self.generators
    }

    /// All elements, sorted, computed once by closure under the generators.
    pub fn elements(&self) -> Result<&[ZqVector]> {
        if let Some(e) = self.elements.get() {
            return Ok(e);
        }
        let e = match self.systematic_form() {
            Ok(sys) => enumerate_free(self.q, self.d, &sys)?,
            Err(_) => enumerate_closure(self.q, self.d, &self.generators)?,
        };
        let _ = self.elements.set(e);
        Ok(self.elements.get().expect("just set"))
    }

    pub fn size(&self) -> Result<usize> {
        Ok(self.elements()?.len())
    }

    pub fn contains(&self, v: &ZqVector) -> Result<bool> {
        Ok(self.elements()?.binary_search(v).is_ok())
    }

    /// Row reduction with unit pivots. Dependent generators are dropped; a
    /// remainder with no unit entry (possible only for composite `q`) is an error.
    pub fn systematic_form(&self) -> Result<SystematicForm> {
        let q = self.q;
        let mut rows: Vec<Vec<u32>> =
            self.generators.iter().map(|g| g.coords().to_vec()).collect();
        let mut pivots = Vec::new();
        let mut done = 0usize;
        loop {
            // Find a unit entry among the unprocessed rows.
            let mut found = None;
            'search: for (i, row) in rows.iter().enumerate().skip(done) {
                for (j, &x) in row.iter().enumerate() {
                    if x != 0 && unit_inverse(x, q).is_some() && !pivots.contains(&j) {
                        found = Some((i, j));
                        break 'search;
                    }
                }
            }
            let Some((i, j)) = found else { break };
            rows.swap(done, i);
            let inv = unit_inverse(rows[done][j], q).expect("unit");
            for x in rows[done].iter_mut() {
                *x = (*x as u64 * inv as u64 % q as u64) as u32;
            }
            let pivot_row = rows[done].clone();
            for (k, row) in rows.iter_mut().enumerate() {
                if k == done || row[j] == 0 {
                    continue;
                }
                let f = row[j] as u64;
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x = ((*x as u64 + (q as u64 - f) * p as u64) % q as u64) as u32;
                }
            }
            pivots.push(j);
            done += 1;
        }
        if rows[done..].iter().any(|r| r.iter().any(|&x| x != 0)) {
            return Err(Error::NoUnitPivot(q));
        }
        let basis = rows
            .into_iter()
            .take(done)
            .map(|r| ZqVector::from_reduced(q, r))
            .collect();
        Ok(SystematicForm { pivots, basis })
    }

    /// Rank of a submodule with a systematic form.
    pub fn rank(&self) -> Result<usize> {
        Ok(self.systematic_form()?.rank())
    }

    /// Systematic parity-check matrix `Q = (I | -A)` up to the returned column permutation.
    pub fn parity_check_matrix(&self) -> Result<ParityCheck> {
        let q = self.q;
        let sys = self.systematic_form()?;
        let info: Vec<usize> = (0..self.d).filter(|j| !sys.pivots.contains(j)).collect();
        let rows = info
            .iter()
            .map(|&c| {
                let mut row = vec![0u32; self.d];
                row[c] = 1;
                for (b, &p) in sys.basis.iter().zip(&sys.pivots) {
                    row[p] = (q - b.coords()[c]) % q;
                }
                ZqVector::from_reduced(q, row)
            })
            .collect();
        let mut permutation = info;
        permutation.extend_from_slice(&sys.pivots);
        Ok(ParityCheck { rows, permutation })
    }

    /// Coset representatives `(u, 0)` supported on the information coordinates,
    /// one per syndrome `u`, in syndrome index order.
    pub fn coset_transversal(&self) -> Result<Vec<ZqVector>> {
        let pc = self.parity_check_matrix()?;
        let r = pc.rows.len();
        check_cap(pow_saturating(self.q, r))?;
        let info = &pc.permutation[..r];
        Ok(super::vector::all_vectors(self.q, r)
            .map(|u| {
                let mut coords = vec![0u32; self.d];
                for (i, &c) in info.iter().enumerate() {
                    coords[c] = u.coords()[i];
                }
                ZqVector::from_reduced(self.q, coords)
            })
            .collect())
    }

    /// Cosets of this submodule in transversal order.
    pub fn cosets(&self) -> Result<Vec<Coset>> {
        Ok(self
            .coset_transversal()?
            .into_iter()
            .map(|rep| Coset { base: self.clone(), representative: rep })
            .collect())
    }

    /// `Γ⊥`, generated by the rows of the parity-check matrix.  Modules
    /// without a systematic form (e.g. `⟨2𝟙⟩` over `Z_4`) fall back to a
    /// scan of `Z_q^d` against the generators.
    pub fn dual(&self) -> Result<Submodule> {
        match self.parity_check_matrix() {
            Ok(pc) => Submodule::new(self.q, self.d, pc.rows),
            Err(Error::NoUnitPivot(_)) => self.dual_by_scan(),
            Err(e) => Err(e),
        }
    }

    fn dual_by_scan(&self) -> Result<Submodule> {
        check_cap(pow_saturating(self.q, self.d))?;
        let mut members = Vec::new();
        for v in all_vectors(self.q, self.d) {
            let mut orthogonal = true;
            for g in &self.generators {
                if v.inner(g)? != 0 {
                    orthogonal = false;
                    break;
                }
            }
            if orthogonal {
                members.push(v);
            }
        }
        members.sort();
        let dual = Submodule::new(self.q, self.d, members.clone())?;
        let _ = dual.elements.set(members);
        Ok(dual)
    }
}

fn enumerate_free(q: u32, d: usize, sys: &SystematicForm) -> Result<Vec<ZqVector>> {
    let s = sys.rank();
    let size = pow_saturating(q, s);
    check_cap(size)?;
    let mut out = Vec::with_capacity(size as usize);
    for idx in 0..size as usize {
        let y = ZqVector::from_index(q, s.max(1), idx);
        let mut acc = vec![0u64; d];
        for (b, &c) in sys.basis.iter().zip(y.coords()) {
            if c == 0 {
                continue;
            }
            for (a, &x) in acc.iter_mut().zip(b.coords()) {
                *a += c as u64 * x as u64;
            }
        }
        out.push(ZqVector::from_reduced(q, acc.into_iter().map(|a| (a % q as u64) as u32).collect()));
    }
    out.sort();
    Ok(out)
}

fn enumerate_closure(q: u32, d: usize, generators: &[ZqVector]) -> Result<Vec<ZqVector>> {
    let mut set: HashSet<ZqVector> = HashSet::new();
    set.insert(ZqVector::zero(q, d));
    for g in generators {
        if g.is_zero() || set.contains(g) {
            continue;
        }
        let multiples: Vec<ZqVector> = (1..q).map(|l| g.scale(l)).collect();
        check_cap(set.len() as u128 * q as u128)?;
        let mut next: HashSet<ZqVector> = HashSet::with_capacity(set.len() * q as usize);
        for x in &set {
            next.insert(x.clone());
            for m in &multiples {
                next.insert(x.add_unchecked(m));
            }
        }
        set = next;
    }
    let mut v: Vec<ZqVector> = set.into_iter().collect();
    v.sort();
    Ok(v)
}

/// All `Z_q`-linear combinations of the generators, deduplicated and sorted.
pub fn enumerate_submodule(gamma: &Submodule) -> Result<Vec<ZqVector>> {
    Ok(gamma.elements()?.to_vec())
}

/// Smallest weight of a nonzero element.
pub fn minimum_distance(gamma: &Submodule) -> Result<usize> {
    gamma
        .elements()?
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| v.weight())
        .min()
        .ok_or(Error::ZeroModule)
}

/// The coset `Γ + c`.
#[derive(Clone, Debug)]
pub struct Coset {
    pub base: Submodule,
    pub representative: ZqVector,
}

impl Coset {
    pub fn new(base: Submodule, representative: ZqVector) -> Result<Self> {
        if representative.q() != base.q() {
            return Err(Error::ModulusMismatch(base.q(), representative.q()));
        }
        if representative.dim() != base.dim() {
            return Err(Error::DimensionMismatch(base.dim(), representative.dim()));
        }
        Ok(Coset { base, representative })
    }

    pub fn elements(&self) -> Result<Vec<ZqVector>> {
        Ok(self
            .base
            .elements()?
            .iter()
            .map(|g| g.add_unchecked(&self.representative))
            .collect())
    }

    /// Same base and representatives differing by an element of the base.
    pub fn same_coset(&self, other: &Coset) -> Result<bool> {
        if self.base != other.base {
            return Ok(false);
        }
        let diff = self.representative.sub(&other.representative)?;
        self.base.contains(&diff)
    }
}

impl PartialEq for Coset {
    fn eq(&self, other: &Self) -> bool {
        self.same_coset(other).unwrap_or(false)
    }
}
