//! Integer and Laurent polynomials: exact gcd, cyclotomic division and
//! real-root isolation on an interval.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::cyclotomic_polynomial;

/// A polynomial with big-integer coefficients, constant term first, no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![BigInt::one()] }
    }

    /// `x - r`.
    pub fn linear_root(r: i64) -> Self {
        Self::from_i64(&[-r, 1])
    }

    pub fn cyclotomic(n: u32) -> Self {
        Self::from_i64(&cyclotomic_polynomial(n))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// The primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_some_and(|l| l.is_negative()) {
            g = -g;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        IntPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, e: usize) -> IntPoly {
        (0..e).fold(IntPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * i).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Pseudo-remainder of `self` by `divisor` (`lc^k · self mod divisor`).
    pub fn pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        let dd = divisor.degree().expect("pseudo-division by zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lr = r.leading().unwrap().clone();
            let mut next = r.scale(&lc).coeffs;
            for (j, b) in divisor.coeffs.iter().enumerate() {
                next[dr - dd + j] -= &lr * b;
            }
            r = IntPoly::new(next);
        }
        r
    }

    /// Exact quotient when `divisor` divides `self` over the integers.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        let lc = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if self.is_zero() { Some(IntPoly::zero()) } else { None };
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let (q, r) = rem[i + dd].div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &q * b;
                }
            }
            quot[i] = q;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(IntPoly::new(quot))
        } else {
            None
        }
    }

    pub fn divisible_by(&self, divisor: &IntPoly) -> bool {
        self.div_exact(divisor).is_some()
    }

    /// Greatest common divisor over `Q`, returned primitive with positive
    /// leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Number of times `factor` divides `self`, and the remaining cofactor.
    pub fn strip(&self, factor: &IntPoly) -> (usize, IntPoly) {
        let mut count = 0;
        let mut cur = self.clone();
        if cur.is_zero() {
            return (0, cur);
        }
        while let Some(q) = cur.div_exact(factor) {
            count += 1;
            cur = q;
        }
        (count, cur)
    }

    /// Multiplicity of `Φ_n` as a factor.
    pub fn cyclotomic_multiplicity(&self, n: u32) -> usize {
        self.strip(&IntPoly::cyclotomic(n)).0
    }

    /// `x^deg p(1/x) = p(x)`.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    pub fn squarefree_part(&self) -> IntPoly {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            self.primitive_part()
        } else {
            self.primitive_part().div_exact(&g).expect("gcd divides").primitive_part()
        }
    }

    /// For an even-degree palindromic `p(x) = x^m L(x + 1/x)`, returns `L`.
    pub fn z_substitution(&self) -> Option<IntPoly> {
        let deg = self.degree()?;
        if deg % 2 != 0 || !self.is_palindromic() {
            return None;
        }
        let m = deg / 2;
        // x^j + x^{-j} = D_j(z) with D_0 = 2, D_1 = z, D_j = z D_{j-1} - D_{j-2}.
        let z = IntPoly::from_i64(&[0, 1]);
        let mut lucas = vec![IntPoly::from_i64(&[2]), z.clone()];
        for j in 2..=m {
            let next = z.mul(&lucas[j - 1]).sub(&lucas[j - 2]);
            lucas.push(next);
        }
        let mut out = IntPoly::new(vec![self.coeffs[m].clone()]);
        for j in 1..=m {
            out = out.add(&lucas[j].scale(&self.coeffs[m + j]));
        }
        Some(out)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// An integer Laurent polynomial `Σ_m c_m x^m`, `m` possibly negative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentPolynomial {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn from_map(coeffs: BTreeMap<i64, BigInt>) -> Self {
        LaurentPolynomial { coeffs: coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn coeff(&self, m: i64) -> BigInt {
        self.coeffs.get(&m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&m, c)| (m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `c_m = c_{-m}` for every `m`.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().all(|(&m, c)| self.coeff(-m) == *c)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// The ordinary polynomial `x^{-low} L(x)` where `low` is the lowest exponent.
    pub fn normalized(&self) -> IntPoly {
        let Some((&low, _)) = self.coeffs.iter().next() else {
            return IntPoly::zero();
        };
        let high = *self.coeffs.keys().next_back().unwrap();
        let mut v = vec![BigInt::zero(); (high - low) as usize + 1];
        for (&m, c) in &self.coeffs {
            v[(m - low) as usize] = c.clone();
        }
        IntPoly::new(v)
    }
}

/// A real root of a polynomial, isolated in `[lower, upper]`; `exact` is set
/// when the root was hit at a rational point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealRoot {
    pub lower: f64,
    pub upper: f64,
    pub exact: Option<String>,
}

impl RealRoot {
    pub fn midpoint(&self) -> f64 {
        (self.lower + self.upper) / 2.0
    }
}

fn rational_poly(p: &IntPoly) -> Vec<BigRational> {
    p.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn rat_trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        let f = lr / &lb;
        for (j, c) in b.iter().enumerate() {
            r[shift + j] -= &f * c;
        }
        r.pop();
        r = rat_trim(r);
    }
    r
}

fn rat_eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Sturm chain of a squarefree polynomial.
fn sturm_chain(p: &IntPoly) -> Vec<Vec<BigRational>> {
    let mut chain = vec![rational_poly(p), rational_poly(&p.derivative())];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let r = rat_rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain
}

fn sign_changes(chain: &[Vec<BigRational>], x: &BigRational) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|p| {
            let v = rat_eval(p, x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Real roots of `p` in the closed interval `[lo, hi]`, isolated by exact
/// rational bisection with Sturm counts and refined to width `tol`.
pub fn real_roots_in(p: &IntPoly, lo: i64, hi: i64, tol: f64) -> Vec<RealRoot> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sf = p.squarefree_part();
    let chain = sturm_chain(&sf);
    let lo_r = BigRational::from_integer(lo.into());
    let hi_r = BigRational::from_integer(hi.into());
    let mut roots = Vec::new();
    if sf.eval(&lo_r).is_zero() {
        roots.push(exact_root(&lo_r));
    }
    // Sturm counts roots in the half-open interval (a, b].
    let mut stack = vec![(lo_r, hi_r)];
    let tol_r = BigRational::new(BigInt::from((tol * 1e15).max(1.0) as i64), BigInt::from(1_000_000_000_000_000i64));
    while let Some((a, b)) = stack.pop() {
        let count = sign_changes(&chain, &a) - sign_changes(&chain, &b);
        if count == 0 {
            continue;
        }
        if sf.eval(&b).is_zero() && count == 1 {
            roots.push(exact_root(&b));
            continue;
        }
        if count == 1 && &b - &a <= tol_r {
            roots.push(RealRoot {
                lower: a.to_f64().unwrap_or(f64::NAN),
                upper: b.to_f64().unwrap_or(f64::NAN),
                exact: None,
            });
            continue;
        }
        let mid = (&a + &b) / BigRational::from_integer(2.into());
        stack.push((mid.clone(), b));
        stack.push((a, mid));
    }
    roots.sort_by(|x, y| x.lower.total_cmp(&y.lower));
    roots
}

fn exact_root(x: &BigRational) -> RealRoot {
    let v = x.to_f64().unwrap_or(f64::NAN);
    RealRoot { lower: v, upper: v, exact: Some(x.to_string()) }
}
