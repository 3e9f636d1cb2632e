//! Mixing times of linear Cayley graphs through the polynomials `F_g`.
//!
//! For a linear graph the eigenvalue differences are multiples of `q`, so
//! with `x = e^{iqt}` and `m_ab = (θ_a - θ_b)/q` flatness of `U(t)` becomes
//! `F_g(x) = 0` for every `g`.  A time is a mixing time exactly when `x` is a
//! common unit-circle zero, i.e. a zero of the gcd of all `F_g`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::euler_phi;
use crate::cayley::CayleyGraph;
use crate::error::{Error, Result};
use crate::poly::{real_roots_in, IntPoly, LaurentPolynomial, RealRoot};
use crate::walk::WalkTime;
use crate::zq::{all_vectors, ZqVector};

/// Exponents `u_a = (θ_a - θ_0)/q` of a linear graph (so `m_ab = u_a - u_b`).
fn scaled_eigenvalues(x: &CayleyGraph) -> Result<Vec<i64>> {
    if !x.connection().is_linear() {
        return Err(Error::NotLinear);
    }
    let q = x.q() as i64;
    let ints = x.eigenvalues()?.integers.as_ref().ok_or(Error::NonIntegerEigenvalues)?;
    let theta0 = ints[0];
    ints.iter()
        .map(|&t| {
            let diff = t - theta0;
            if diff % q != 0 {
                Err(Error::NonIntegralExponent(x.q()))
            } else {
                Ok(diff / q)
            }
        })
        .collect()
}

/// `Σ_{a,b} w(⟨a-b,g⟩) x^{u_a-u_b} - q^d` from the histogram of
/// `(u_a, ⟨a,g⟩)`, with weight `w(0) = 1` and, for `q = 4`, `w(2) = -1`
/// (the `±i` classes cancel on the unit circle for linear graphs); all other
/// residues weigh zero.
fn fg_from_exponents(q: u32, d: usize, u: &[i64], g: &ZqVector) -> LaurentPolynomial {
    pair_sum(q, d, u, g, q == 4)
}

fn pair_sum(q: u32, d: usize, u: &[i64], g: &ZqVector, signed: bool) -> LaurentPolynomial {
    let qu = q as usize;
    let low = *u.iter().min().expect("nonempty");
    let high = *u.iter().max().expect("nonempty");
    let width = (high - low) as usize + 1;
    let mut hist = vec![vec![0i64; width]; qu];
    for (idx, &ua) in u.iter().enumerate() {
        let a = ZqVector::from_index(q, d, idx);
        let k = a.inner(g).expect("matching shapes") as usize;
        hist[k][(ua - low) as usize] += 1;
    }
    let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
    let mut correlate = |h1: &[i64], h2: &[i64], sign: i64| {
        for (i, &c1) in h1.iter().enumerate() {
            if c1 == 0 {
                continue;
            }
            for (j, &c2) in h2.iter().enumerate() {
                if c2 != 0 {
                    *acc.entry(i as i64 - j as i64).or_default() += BigInt::from(sign * c1 * c2);
                }
            }
        }
    };
    for k in 0..qu {
        correlate(&hist[k], &hist[k], 1);
        if signed {
            correlate(&hist[k], &hist[(k + 2) % 4], -1);
        }
    }
    *acc.entry(0).or_default() -= BigInt::from(q).pow(d as u32);
    LaurentPolynomial::from_map(acc)
}

/// `F_g(x)` for a linear Cayley graph.
pub fn build_fg(x: &CayleyGraph, g: &ZqVector) -> Result<LaurentPolynomial> {
    if g.q() != x.q() {
        return Err(Error::ModulusMismatch(x.q(), g.q()));
    }
    if g.dim() != x.dim() {
        return Err(Error::DimensionMismatch(x.dim(), g.dim()));
    }
    if !matches!(x.q(), 2 | 3 | 4) && !crate::zq::is_prime(x.q() as u64) {
        return Err(Error::Unsupported(format!("F_g is defined here for prime q and q = 4, got {}", x.q())));
    }
    let u = scaled_eigenvalues(x)?;
    Ok(fg_from_exponents(x.q(), x.dim(), &u, g))
}

/// The unsigned variant `Σ_{⟨a-b,g⟩=0} x^{m_ab} - q^d` for any modulus.
/// It equals `q^{2d-1} Σ_λ |U_{0,λg}|^2 - q^d` on the unit circle, a
/// necessary condition that for prime `q` coincides with [`build_fg`].
pub fn build_fg_counting(x: &CayleyGraph, g: &ZqVector) -> Result<LaurentPolynomial> {
    if g.q() != x.q() || g.dim() != x.dim() {
        return Err(Error::DimensionMismatch(x.dim(), g.dim()));
    }
    let u = scaled_eigenvalues(x)?;
    Ok(pair_sum(x.q(), x.dim(), &u, g, false))
}

/// `0` together with one nonzero vector from each class `{λg : λ a unit}`:
/// the first nonzero coordinate is normalized to `1`.
pub fn scalar_transversal(q: u32, d: usize) -> Vec<ZqVector> {
    all_vectors(q, d)
        .filter(|v| v.coords().iter().find(|&&c| c != 0).is_none_or(|&c| c == 1 || (q == 4 && c == 2)))
        .collect()
}

/// gcd of all nonzero `F_g` (normalized to ordinary polynomials), primitive
/// with positive leading coefficient; the zero polynomial if every `F_g`
/// vanishes identically.
pub fn mixing_time_gcd(x: &CayleyGraph) -> Result<IntPoly> {
    let u = scaled_eigenvalues(x)?;
    let (q, d) = (x.q(), x.dim());
    let polys: Vec<IntPoly> = scalar_transversal(q, d)
        .par_iter()
        .map(|g| fg_from_exponents(q, d, &u, g).normalized())
        .filter(|p| !p.is_zero())
        .collect();
    Ok(polys.iter().fold(IntPoly::zero(), |acc, p| if acc.is_zero() { p.primitive_part() } else { acc.gcd(p) }))
}

/// Exact division of the normalized polynomial by `Φ_N`.
pub fn cyclotomic_divisibility(p: &LaurentPolynomial, n: u32) -> bool {
    divisible_by_cyclotomic(&p.normalized(), n)
}

/// Exact division of `p` by `Φ_N`; the zero polynomial is divisible by everything.
pub fn divisible_by_cyclotomic(p: &IntPoly, n: u32) -> bool {
    n >= 1 && (p.is_zero() || p.divisible_by(&IntPoly::cyclotomic(n)))
}

/// A cyclotomic factor `Φ_N` of the gcd: `x = e^{iqt}` a primitive `N`-th
/// root of unity, i.e. `t = 2πm/(qN)` with `gcd(m, N) = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CyclotomicTime {
    pub n: u32,
    pub multiplicity: usize,
    /// The representative `m = 1`.
    pub time: WalkTime,
}

/// Everything the gcd says about mixing times.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixingTimeReport {
    pub q: u32,
    pub d: usize,
    /// `None` when every `F_g` vanishes (all times are admissible).
    pub gcd_degree: Option<usize>,
    pub gcd: IntPoly,
    pub cyclotomic_times: Vec<CyclotomicTime>,
    /// Real roots in `[-2, 2]` of the gcd written in `z = x + 1/x`, after
    /// the factors `x ∓ 1` are removed.
    pub real_roots_z: Vec<RealRoot>,
    pub multiplicity_at_one: usize,
    pub multiplicity_at_minus_one: usize,
}

/// Builds the gcd, scans `Φ_N` for `N ≤ scan_n` and isolates the real
/// `z`-roots on `[-2, 2]`.
pub fn mixing_time_report(x: &CayleyGraph, scan_n: u32) -> Result<MixingTimeReport> {
    let gcd = mixing_time_gcd(x)?;
    let q = x.q();
    let cyclotomic_times = (1..=scan_n)
        .filter_map(|n| {
            let mult = if gcd.is_zero() { 0 } else { gcd.cyclotomic_multiplicity(n) };
            (mult > 0).then(|| CyclotomicTime { n, multiplicity: mult, time: WalkTime::two_pi_over(q as u64 * n as u64) })
        })
        .collect();
    let (at_one, rest) = gcd.strip(&IntPoly::from_i64(&[-1, 1]));
    let (at_minus_one, rest) = rest.strip(&IntPoly::from_i64(&[1, 1]));
    let real_roots_z = rest
        .squarefree_part()
        .z_substitution()
        .map(|z| real_roots_in(&z, -2, 2, 1e-12))
        .unwrap_or_default();
    Ok(MixingTimeReport {
        q,
        d: x.dim(),
        gcd_degree: gcd.degree(),
        gcd,
        cyclotomic_times,
        real_roots_z,
        multiplicity_at_one: at_one,
        multiplicity_at_minus_one: at_minus_one,
    })
}

/// `(q-1)(φ(n) + q - 1)/2`: a linear graph mixing at `2π/(qn)` has valency at least this.
pub fn totient_bound(q: u32, n: u64) -> Result<Ratio<u64>> {
    if q < 2 || n < 1 {
        return Err(Error::Precondition(format!("need q ≥ 2 and n ≥ 1, got q = {q}, n = {n}")));
    }
    let q = q as u64;
    Ok(Ratio::new((q - 1) * (euler_phi(n) + q - 1), 2))
}

/// `q·F_𝟙(z) = ((q-1)z + (q-1)^2 + 1)^d + (q-1)(2-z)^d - q^{d+1}` for the
/// folded graph `H(d+1, q)/⟨𝟙⟩`, as a polynomial in `z = x + 1/x`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoldedPolynomial {
    pub q: u32,
    pub d: usize,
    /// Coefficients of `q·F_𝟙(z)`.
    pub scaled: IntPoly,
}

impl FoldedPolynomial {
    pub fn eval_f64(&self, z: f64) -> f64 {
        self.scaled.eval_f64(z) / self.q as f64
    }

    pub fn real_roots(&self) -> Vec<RealRoot> {
        real_roots_in(&self.scaled, -2, 2, 1e-12)
    }
}

pub fn folded_polynomial(q: u32, d: usize) -> Result<FoldedPolynomial> {
    crate::zq::check_modulus(q)?;
    if d == 0 {
        return Err(Error::Precondition("d must be at least one".into()));
    }
    let qi = q as i64;
    let a = IntPoly::from_i64(&[(qi - 1) * (qi - 1) + 1, qi - 1]).pow(d);
    let b = IntPoly::from_i64(&[2, -1]).pow(d).scale(&BigInt::from(qi - 1));
    let c = IntPoly::new(vec![BigInt::from(q).pow(d as u32 + 1)]);
    Ok(FoldedPolynomial { q, d, scaled: a.add(&b).sub(&c) })
}

/// The admissible time set of the folded graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum TimeFamily {
    /// `t = kπ/4` with `k` odd.
    OddQuarterPi,
    /// `t = 2kπ/9` with `3 ∤ k`.
    TwoNinthsPi,
    Empty,
}

impl TimeFamily {
    /// Membership; the families consist of rational times only.
    pub fn contains(&self, t: &WalkTime) -> bool {
        match (self, t.as_rational()) {
            (TimeFamily::OddQuarterPi, Some((_, den))) => den == 8,
            (TimeFamily::TwoNinthsPi, Some((_, den))) => den == 9,
            _ => false,
        }
    }

    /// The earliest positive member.
    pub fn first(&self) -> Option<WalkTime> {
        match self {
            TimeFamily::OddQuarterPi => Some(WalkTime::pi_times(1, 4)),
            TimeFamily::TwoNinthsPi => Some(WalkTime::two_pi_over(9)),
            TimeFamily::Empty => None,
        }
    }
}

/// Verdict for `H(d+1, q)/⟨𝟙⟩`, the Cayley graph on `Z_q^d` with
/// connection set the nonzero multiples of `e_1, …, e_d, 𝟙`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoldedVerdict {
    pub q: u32,
    pub d: usize,
    /// The only possible value `2 - q` of `z = 2cos(qt)`, when it lies in `[-2, 2]`.
    pub stationary_z: Option<i64>,
    pub family: TimeFamily,
    /// Whether the graph actually mixes at the family's times.
    pub mixes: bool,
}

pub fn folded_verdict(q: u32, d: usize) -> Result<FoldedVerdict> {
    crate::zq::check_modulus(q)?;
    if d == 0 {
        return Err(Error::Precondition("d must be at least one".into()));
    }
    let family = match q {
        2 | 4 => TimeFamily::OddQuarterPi,
        3 => TimeFamily::TwoNinthsPi,
        _ => TimeFamily::Empty,
    };
    let weight = d + 1;
    let mixes = match q {
        // d = 1 folds to K_q itself.
        2..=4 if d == 1 => true,
        2 | 4 => weight % 2 == 1,
        3 => weight % 3 != 0,
        _ => false,
    };
    let z = 2 - q as i64;
    Ok(FoldedVerdict { q, d, stationary_z: (-2..=2).contains(&z).then_some(z), family, mixes })
}

/// The folded graph's connection set.
pub fn folded_connection_set(q: u32, d: usize) -> Result<crate::cayley::ConnectionSet> {
    let mut gens: Vec<ZqVector> = (0..d).map(|j| ZqVector::basis(q, d, j)).collect();
    gens.push(ZqVector::ones(q, d));
    crate::cayley::ConnectionSet::from_multiples(q, d, &gens)
}

/// `F_g(1) + q^d`, the number of pairs `(a, b)` with `⟨a-b, g⟩ = 0`, for tests.
pub fn pair_count(fg: &LaurentPolynomial, q: u32, d: usize) -> BigInt {
    fg.eval_at_one() + BigInt::from(q).pow(d as u32)
}

/// Whether the gcd is the zero polynomial.
pub fn gcd_is_trivially_zero(p: &IntPoly) -> bool {
    p.is_zero() || p.coeffs().iter().all(Zero::is_zero)
}
