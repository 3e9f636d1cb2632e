//! Coset-weight characterizations of uniform mixing on Hamming quotients
//! `H(d,q)/Γ`: the dual-enumerator necessary condition, the per-coset
//! identities at the standard times, and the closed-form verdicts for
//! submodules generated by one or two vectors.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::GroupRing;
use crate::error::{Error, Result};
use crate::walk::{coset_enumerators, WalkTime};
use crate::zq::{
    macwilliams_transform, minimum_distance, weight_enumerator, ElementSet, Submodule, WeightClassTriple,
    WeightEnumerator, ZqVector,
};

/// `|W(x, 1)|^2 = target` with `W(x, y) = Σ_w A_w x^{d-w} y^w` and `x = ζ_order^step`,
/// decided exactly in `Z[ζ_order]`.
fn enumerator_norm_is(w: &WeightEnumerator, order: u32, step: i64, target: &BigInt) -> bool {
    let d = w.length() as i64;
    let mut g = GroupRing::<BigInt>::zero(order);
    for (wt, &count) in w.counts.iter().enumerate() {
        if count != 0 {
            g.add_term(step * (d - wt as i64), BigInt::from(count));
        }
    }
    g.norm_sqr().is_integer(target)
}

fn enumerator_norm_f64(w: &WeightEnumerator, x: Complex64) -> f64 {
    let d = w.length() as i32;
    w.counts.iter().enumerate().map(|(wt, &c)| x.powi(d - wt as i32) * c as f64).sum::<Complex64>().norm_sqr()
}

/// Necessary condition for uniform mixing of `H(d,q)/Γ` at time `t`:
/// `|W_{Γ⊥}(e^{qit}, 1)|^2 = |Γ⊥|`.  The dual enumerator comes from the
/// MacWilliams transform of `Γ`'s own enumerator.
pub fn dual_condition(gamma: &Submodule, t: &WalkTime) -> Result<bool> {
    let (q, d) = (gamma.q(), gamma.dim());
    let w = weight_enumerator(gamma)?;
    let size = w.total();
    let dual = macwilliams_transform(&w, size, q, d)?;
    let dual_size = dual.total();
    match t.as_rational() {
        Some((num, den)) => {
            let order = u32::try_from(den).map_err(|_| Error::Unsupported(format!("denominator {den} too large")))?;
            let step = (q as i128 * num as i128).rem_euclid(den as i128) as i64;
            Ok(enumerator_norm_is(&dual, order, step, &BigInt::from(dual_size)))
        }
        None => {
            let x = Complex64::from_polar(1.0, q as f64 * t.value());
            Ok((enumerator_norm_f64(&dual, x) / dual_size as f64 - 1.0).abs() <= crate::verdict::FLOAT_TOLERANCE)
        }
    }
}

/// Per-coset outcome of [`coset_report`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CosetReport {
    pub q: u32,
    pub cosets: usize,
    /// Distinct coset weight enumerators encountered.
    pub distinct_enumerators: usize,
    /// Representatives (in transversal order) whose coset fails the identity.
    pub failures: Vec<ZqVector>,
    pub satisfied: bool,
}

/// The root of unity at which the coset identity is evaluated:
/// `i` for `q = 2`, `e^{2πi/3}` for `q = 3` and `-1` for `q = 4`.
fn standard_root(q: u32) -> Result<(u32, i64)> {
    match q {
        2 => Ok((4, 1)),
        3 => Ok((3, 1)),
        4 => Ok((2, 1)),
        _ => Err(Error::Unsupported(format!("coset identities exist for q ∈ {{2, 3, 4}}, got {q}"))),
    }
}

/// Checks `|W_v(x, 1)|^2 = |Γ|` on every coset, with `x` the standard root
/// for `q` (Gaussian integers, Eisenstein integers, plain integers).
pub fn coset_report(gamma: &Submodule) -> Result<CosetReport> {
    let q = gamma.q();
    let (order, step) = standard_root(q)?;
    let size = BigInt::from(gamma.size()?);
    let reps = gamma.coset_transversal()?;
    let enumerators = coset_enumerators(gamma)?;
    let mut memo: HashMap<&WeightEnumerator, bool> = HashMap::new();
    for w in &enumerators {
        memo.entry(w).or_insert_with(|| enumerator_norm_is(w, order, step, &size));
    }
    let failures: Vec<ZqVector> =
        reps.iter().zip(&enumerators).filter(|(_, w)| !memo[w]).map(|(r, _)| r.clone()).collect();
    Ok(CosetReport {
        q,
        cosets: reps.len(),
        distinct_enumerators: memo.len(),
        satisfied: failures.is_empty(),
        failures,
    })
}

/// Uniform mixing of `H(d,q)/Γ` at `τ_q` (`π/4` for `q ∈ {2,4}`, `2π/9` for `q = 3`).
pub fn coset_condition(gamma: &Submodule, q: u32) -> Result<bool> {
    if q != gamma.q() {
        return Err(Error::ModulusMismatch(q, gamma.q()));
    }
    Ok(coset_report(gamma)?.satisfied)
}

/// The earliest mixing time `τ_q` of `K_q`.
pub fn tau(q: u32) -> Result<WalkTime> {
    match q {
        2 | 4 => Ok(WalkTime::pi_times(1, 4)),
        3 => Ok(WalkTime::two_pi_over(9)),
        _ => Err(Error::Unsupported(format!("K_{q} does not admit uniform mixing"))),
    }
}

/// `n_0 n_1 + n_0 n_2 + n_1 n_2 = 3^{2s-1} - 3^{s-1}`.
pub fn q3_identity(triple: &WeightClassTriple, s: u32) -> bool {
    if s == 0 {
        return false;
    }
    let target = 3u128.pow(2 * s - 1) - 3u128.pow(s - 1);
    let [a, b, c] = [triple.n0 as u128, triple.n1 as u128, triple.n2 as u128];
    a * b + a * c + b * c == target
}

/// The ternary coset identity on one coset or submodule of size `3^s`.
pub fn theorem_q3_check<S: ElementSet + ?Sized>(set: &S, s: u32) -> Result<bool> {
    if set.modulus() != 3 {
        return Err(Error::ModulusMismatch(3, set.modulus()));
    }
    Ok(q3_identity(&crate::zq::weight_class_triple(set)?, s))
}

/// Sorted `(n_0, n_1, n_2)` of a ternary coset or submodule.
pub fn weight_structure<S: ElementSet + ?Sized>(set: &S) -> Result<[u64; 3]> {
    if set.modulus() != 3 {
        return Err(Error::ModulusMismatch(3, set.modulus()));
    }
    Ok(crate::zq::weight_class_triple(set)?.sorted())
}

/// `counts[j][c]`: elements of `Γ` with weight `≡ j` whose weight change
/// `wt(y + c) - wt(y)` is `≡ c (mod 3)`.
pub fn weight_change_counts(gamma: &Submodule, c: &ZqVector) -> Result<[[u64; 3]; 3]> {
    if gamma.q() != 3 || c.q() != 3 {
        return Err(Error::ModulusMismatch(3, if gamma.q() != 3 { gamma.q() } else { c.q() }));
    }
    if c.dim() != gamma.dim() {
        return Err(Error::DimensionMismatch(gamma.dim(), c.dim()));
    }
    let mut counts = [[0u64; 3]; 3];
    for y in gamma.elements()? {
        let w = y.weight();
        let delta = (y.add(c)?.weight() as i64 - w as i64).rem_euclid(3) as usize;
        counts[w % 3][delta] += 1;
    }
    Ok(counts)
}

/// `(m_0, m_1, m_2)`: elements of `Γ_j` whose weight change is `≡ 1 (mod 3)`;
/// all zero when `c` is orthogonal to `Γ` (then no weight change depends on the element).
pub fn weight_change_profile(gamma: &Submodule, c: &ZqVector) -> Result<[u64; 3]> {
    let mut orthogonal = true;
    for g in gamma.generators() {
        orthogonal &= g.inner(c)? == 0;
    }
    if orthogonal {
        return Ok([0; 3]);
    }
    let counts = weight_change_counts(gamma, c)?;
    Ok([counts[0][1], counts[1][1], counts[2][1]])
}

/// Closed-form verdict for `H(d,q)/⟨a⟩` at `τ_q`.
///
/// `q = 2`: `wt(a)` odd; `q = 3`: `wt(a) ≢ 0 (mod 3)`; `q = 4`: the number
/// of coordinates of `a` that are units (`1` or `3`) is odd.  For vectors
/// over `{0, 1, 3}` the last rule is "`wt(a)` odd".
pub fn one_generator_verdict(a: &ZqVector, q: u32) -> Result<bool> {
    if a.q() != q {
        return Err(Error::ModulusMismatch(q, a.q()));
    }
    if a.weight() < 3 {
        return Err(Error::WeightTooSmall(a.weight()));
    }
    match q {
        2 => Ok(a.weight() % 2 == 1),
        3 => Ok(a.weight() % 3 != 0),
        4 => Ok(a.coords().iter().filter(|&&x| x % 2 == 1).count() % 2 == 1),
        _ => Err(Error::Unsupported(format!("one-generator rule exists for q ∈ {{2, 3, 4}}, got {q}"))),
    }
}

/// The weight-parity form of the `q = 4` rule, kept for comparison with
/// [`one_generator_verdict`]; it disagrees whenever `a` has coordinates equal to `2`.
pub fn one_generator_weight_parity(a: &ZqVector) -> bool {
    a.weight() % 2 == 1
}

/// Closed-form verdict for `H(d,3)/⟨a,b⟩` at `2π/9`: mixing iff
/// (i) `a·b ≡ 0` and `wt(a), wt(b) ≢ 0`, or
/// (ii) `a·b ≢ 0` and not `wt(a) ≡ wt(b) ≢ 0` (all mod 3).
pub fn two_generator_verdict(a: &ZqVector, b: &ZqVector) -> Result<bool> {
    if a.q() != 3 || b.q() != 3 {
        return Err(Error::ModulusMismatch(3, if a.q() != 3 { a.q() } else { b.q() }));
    }
    let gamma = Submodule::new(3, a.dim(), vec![a.clone(), b.clone()])?;
    if gamma.rank()? != 2 {
        return Err(Error::Precondition("generators must be independent".into()));
    }
    let dist = minimum_distance(&gamma)?;
    if dist < 3 {
        return Err(Error::DistanceTooSmall(dist));
    }
    Ok(two_generator_rule(a.weight() % 3, b.weight() % 3, a.inner(b)?))
}

/// The rule of [`two_generator_verdict`] on residues.
pub fn two_generator_rule(wa: usize, wb: usize, ab: u32) -> bool {
    if ab % 3 == 0 {
        wa % 3 != 0 && wb % 3 != 0
    } else {
        !(wa % 3 == wb % 3 && wa % 3 != 0)
    }
}

/// One instance found by [`q1_scan`] where `Γ` passes its own weight
/// identity but some coset does not (or the reverse).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Q1Counterexample {
    pub generators: Vec<ZqVector>,
    pub own_identity: bool,
    pub all_cosets: bool,
}

/// Summary of a scan asking whether `Γ`'s own weight distribution decides
/// the coset identity for all cosets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Q1Report {
    pub q: u32,
    pub d: usize,
    pub samples: usize,
    pub examined: usize,
    pub counterexamples: Vec<Q1Counterexample>,
}

/// Samples random submodules of `Z_q^d` (rank `1..=max_rank`, minimum
/// distance at least three) and records every instance where `Γ`'s own
/// coset identity disagrees with the verdict over all cosets.
pub fn q1_scan<R: Rng>(q: u32, d: usize, max_rank: usize, samples: usize, rng: &mut R) -> Result<Q1Report> {
    standard_root(q)?;
    let mut instances = Vec::new();
    for _ in 0..samples {
        let rank = rng.gen_range(1..=max_rank.max(1));
        let gens: Vec<ZqVector> = (0..rank)
            .map(|_| ZqVector::from_residues(q, (0..d).map(|_| rng.gen_range(0..q)).collect()).expect("residues"))
            .collect();
        instances.push(gens);
    }
    let results: Vec<Option<Q1Counterexample>> = instances
        .into_par_iter()
        .map(|gens| -> Result<Option<Q1Counterexample>> {
            let gamma = Submodule::new(q, d, gens.clone())?;
            if gamma.size()? == 1 || minimum_distance(&gamma)? < 3 {
                return Ok(None);
            }
            let (order, step) = standard_root(q)?;
            let size = BigInt::from(gamma.size()?);
            let own = enumerator_norm_is(&weight_enumerator(&gamma)?, order, step, &size);
            let all = coset_report(&gamma)?.satisfied;
            Ok(Some(Q1Counterexample { generators: gens, own_identity: own, all_cosets: all }))
        })
        .collect::<Result<Vec<_>>>()?;
    let examined = results.iter().filter(|r| r.is_some()).count();
    let counterexamples =
        results.into_iter().flatten().filter(|c| c.own_identity != c.all_cosets).collect();
    Ok(Q1Report { q, d, samples, examined, counterexamples })
}

/// `Σ_w A_w` as an f64, for reports.
pub fn enumerator_total_f64(w: &WeightEnumerator) -> f64 {
    BigInt::from(w.total()).to_f64().unwrap_or(f64::NAN)
}
