use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::big_pow;
use crate::cayley::ConnectionSet;
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::walk::WalkTime;
use crate::zq::check_modulus;

use super::conditions::{main3_condition, main4_condition, scheme_graph_condition, CongruenceResult};
use super::krawtchouk::KrawtchoukTable;

/// A union of distance graphs `Σ_{r ∈ classes} A_r` in the Hamming scheme
/// `H(d, q)`.  Class `0` (the identity) only contributes a global phase to
/// the walk, so it is dropped on construction and the fact recorded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeGraphSpec {
    d: usize,
    q: u32,
    classes: Vec<usize>,
    dropped_identity: bool,
}

impl SchemeGraphSpec {
    pub fn new(d: usize, q: u32, classes: &[usize]) -> Result<Self> {
        check_modulus(q)?;
        if d == 0 {
            return Err(Error::Precondition("scheme dimension must be at least one".into()));
        }
        if let Some(&r) = classes.iter().find(|&&r| r > d) {
            return Err(Error::IndexOutOfRange(format!("class {r} exceeds d = {d}")));
        }
        let dropped_identity = classes.contains(&0);
        let mut kept: Vec<usize> = classes.iter().copied().filter(|&r| r > 0).collect();
        kept.sort_unstable();
        kept.dedup();
        if kept.is_empty() {
            return Err(Error::Precondition("no non-identity classes".into()));
        }
        Ok(SchemeGraphSpec { d, q, classes: kept, dropped_identity })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn dropped_identity(&self) -> bool {
        self.dropped_identity
    }

    /// `θ_s = Σ_{r ∈ classes} p_r(s)` for `s = 0..=d`.
    pub fn eigenvalues(&self) -> Result<Vec<BigInt>> {
        let table = KrawtchoukTable::new(self.d, self.q)?;
        Ok((0..=self.d).map(|s| self.classes.iter().map(|&r| table.get(r, s)).sum()).collect())
    }

    /// Explicit connection set; only feasible when `q^d` is enumerable.
    pub fn connection_set(&self) -> Result<ConnectionSet> {
        ConnectionSet::distance_classes(self.d, self.q, &self.classes)
    }
}

/// One member of the binomial-condition families of distance graphs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyInstance {
    pub q: u32,
    pub k: u32,
    pub d: usize,
    pub r: usize,
    pub time: WalkTime,
    pub condition: CongruenceResult,
}

/// Family members for `2 ≤ k ≤ k_max`.  For `q = 3`: `d = 2·3^k - 9`,
/// `r ∈ {3^k-1, 3^k-4, 3^k-7}` at `2π/3^k`.  For `q = 4`: `(d, r) =
/// (2^{k-1}-1, 2^{k-2})` and `d = 2^k - 2`, `r ∈ {2^{k-1}-1, 2^{k-1}}` at
/// `π/2^k`.  Each instance carries its binomial-condition check.
pub fn enumerate_families(k_max: u32, q: u32) -> Result<Vec<FamilyInstance>> {
    if k_max < 2 {
        return Err(Error::Precondition(format!("k_max must be at least 2, got {k_max}")));
    }
    let mut out = Vec::new();
    for k in 2..=k_max {
        let pairs: Vec<(usize, usize)> = match q {
            3 => {
                let p = 3usize.checked_pow(k).ok_or_else(|| Error::Unsupported(format!("k = {k} too large")))?;
                [p - 1, p - 4, p - 7].into_iter().map(|r| (2 * p - 9, r)).collect()
            }
            4 => {
                let p = 2usize.checked_pow(k).ok_or_else(|| Error::Unsupported(format!("k = {k} too large")))?;
                vec![(p / 2 - 1, p / 4), (p - 2, p / 2 - 1), (p - 2, p / 2)]
            }
            _ => return Err(Error::Unsupported(format!("families exist for q ∈ {{3, 4}}, got {q}"))),
        };
        for (d, r) in pairs {
            let condition = if q == 3 { main3_condition(d, r, k)? } else { main4_condition(d, r, k)? };
            let time = super::conditions::certified_time(q, k)?;
            out.push(FamilyInstance { q, k, d, r, time, condition });
        }
    }
    Ok(out)
}

/// Sums of the coefficients of `f_s(x) = (1+2x)^{m-s} (1-x)^s` over exponents
/// `≡ residue (mod 3)`, for `s = 0..=m`.  Since `[x^e] f_s = p^{(m)}_e(s)` for
/// `q = 3`, these equal `P^{(m)} a` with `a_e = [e ≡ residue]`.
pub fn filter_sums(m: usize, residue: usize) -> Vec<BigInt> {
    let base = IntPoly::from_i64(&[1, 2]);
    let drop = IntPoly::from_i64(&[1, -1]);
    (0..=m)
        .map(|s| {
            let f = base.pow(m - s).mul(&drop.pow(s));
            f.coeffs().iter().enumerate().filter(|(e, _)| e % 3 == residue % 3).map(|(_, c)| c.clone()).sum()
        })
        .collect()
}

/// Closed form of [`filter_sums`] for even `m = 2k`, from
/// `f_s(1) = 3^{2k} [s = 0]` and `f_s(ω) = (-3)^k ω^{-s}`:
/// `(f_s(1) + (-3)^k (2 if 3 | residue+s else -1)) / 3`.
pub fn filter_sum_closed_form(k: usize, residue: usize, s: usize) -> BigInt {
    let at_one = if s == 0 { big_pow(3, 2 * k) } else { BigInt::zero() };
    let pair = if (residue + s) % 3 == 0 { 2 } else { -1 };
    (at_one + big_pow(-3, k) * pair) / 3
}

/// The graph `Σ_ℓ A_{3ℓ+i}` in `H(d, 3)`, with its eigenvalues, the filtered
/// coefficient sums that drive the congruence test, and that test evaluated
/// at the two neighbouring exponents `k` and `k + 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnionClassGraph {
    pub k: u32,
    pub i: usize,
    pub spec: SchemeGraphSpec,
    pub eigenvalues: Vec<BigInt>,
    /// `(P^{(d-1)} a)_s`: class `r` sits at exponent `r - 1`, so the filter
    /// residue is `i - 1 (mod 3)`.
    pub filter_sums: Vec<BigInt>,
    /// Congruence test for `2π/3^k`.
    pub at_k: CongruenceResult,
    /// Congruence test for `2π/3^{k+1}`.
    pub at_k_plus_one: CongruenceResult,
}

/// Union graph in `H(2k+1, 3)`.
pub fn union_class_graph(k: u32, i: usize) -> Result<UnionClassGraph> {
    union_class_graph_in(2 * k as usize + 1, k, i)
}

/// Union graph `Σ_ℓ A_{3ℓ+i}` in `H(d, 3)` for an explicit `d`, so that both
/// candidate dimensions `2k` and `2k+1` can be examined.
pub fn union_class_graph_in(d: usize, k: u32, i: usize) -> Result<UnionClassGraph> {
    if k < 1 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    if i > 2 {
        return Err(Error::IndexOutOfRange(format!("residue i = {i} must be 0, 1 or 2")));
    }
    let classes: Vec<usize> = (i..=d).step_by(3).collect();
    let spec = SchemeGraphSpec::new(d, 3, &classes)?;
    let eigenvalues = spec.eigenvalues()?;
    let filter_sums = filter_sums(d - 1, (i + 2) % 3);
    let at_k = if k >= 2 { scheme_graph_condition(&spec, k)? } else { CongruenceResult { satisfied: false, epsilon: None, time: None } };
    let at_k_plus_one = scheme_graph_condition(&spec, k + 1)?;
    Ok(UnionClassGraph { k, i, spec, eigenvalues, filter_sums, at_k, at_k_plus_one })
}
