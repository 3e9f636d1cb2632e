//! The walk on the star `K_{1,n}` in closed form.
//!
//! The spectrum is `{0, ±√n}`, so with `c = cos(√n t)` the transition matrix
//! (centre first) is `[[c, (i/√n) sin(√n t) 𝟙^T], [·, I + (c-1)/n J]]`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dense::Adjacency;
use crate::error::{Error, Result};
use crate::verdict::{Method, MixingVerdict};

/// Tolerance for the closed-form star verdicts.
pub const STAR_TOLERANCE: f64 = 1e-10;

/// The four distinct entries of `U(t)` on `K_{1,n}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StarTransition {
    pub n: usize,
    pub t: f64,
    pub corner: Complex64,
    pub edge_amp: Complex64,
    pub leaf_diag: Complex64,
    pub leaf_offdiag: Complex64,
}

impl StarTransition {
    pub fn matrix(&self) -> DMatrix<Complex64> {
        let n = self.n + 1;
        DMatrix::from_fn(n, n, |i, j| match (i, j) {
            (0, 0) => self.corner,
            (0, _) | (_, 0) => self.edge_amp,
            _ if i == j => self.leaf_diag,
            _ => self.leaf_offdiag,
        })
    }

    /// `|corner|^2 + n |edge_amp|^2`, which is one.
    pub fn centre_column_norm(&self) -> f64 {
        self.corner.norm_sqr() + self.n as f64 * self.edge_amp.norm_sqr()
    }

    /// Flatness of the centre's column.
    pub fn centre_verdict(&self) -> MixingVerdict {
        let order = self.n + 1;
        verdict_of([self.corner, self.edge_amp].into_iter(), order)
    }

    /// Flatness of the whole matrix.
    pub fn verdict(&self) -> MixingVerdict {
        let order = self.n + 1;
        let leaves: Vec<Complex64> = if self.n >= 2 {
            vec![self.leaf_diag, self.leaf_offdiag]
        } else {
            vec![self.leaf_diag]
        };
        verdict_of([self.corner, self.edge_amp].into_iter().chain(leaves), order)
    }
}

fn verdict_of(entries: impl Iterator<Item = Complex64>, order: usize) -> MixingVerdict {
    let dev = entries.map(|z| (z.norm_sqr() * order as f64 - 1.0).abs()).fold(0.0, f64::max);
    MixingVerdict { flat: dev <= STAR_TOLERANCE, max_deviation: dev, method: Method::ClosedForm, suspect: false }
}

pub fn star_transition(n: usize, t: f64) -> Result<StarTransition> {
    if n == 0 {
        return Err(Error::Precondition("a star needs at least one leaf".into()));
    }
    let root = (n as f64).sqrt();
    let (s, c) = (root * t).sin_cos();
    let shift = Complex64::new((c - 1.0) / n as f64, 0.0);
    Ok(StarTransition {
        n,
        t,
        corner: Complex64::new(c, 0.0),
        edge_amp: Complex64::new(0.0, s / root),
        leaf_diag: shift + 1.0,
        leaf_offdiag: shift,
    })
}

/// The first `count` positive times with `tan(√n t) = ±√n`, i.e.
/// `t = (±arctan √n + jπ)/√n`; each is kept only if the centre's column is
/// flat there.
pub fn local_mixing_times(n: usize, count: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::Precondition("a star needs at least one leaf".into()));
    }
    let root = (n as f64).sqrt();
    let alpha = root.atan();
    let mut times = Vec::with_capacity(count);
    let mut j = 0usize;
    while times.len() < count {
        for angle in [j as f64 * PI - alpha, j as f64 * PI + alpha] {
            if angle > 0.0 && times.len() < count {
                let t = angle / root;
                if star_transition(n, t)?.centre_verdict().flat {
                    times.push(t);
                }
            }
        }
        j += 1;
    }
    Ok(times)
}

/// Times at which the whole walk on `K_{1,n}` is flat: `π/4 + jπ/2` for
/// `n = 1`; for `n ≥ 2` the leaf block forces `cos(√n t) = 1 - n/2`, which
/// together with `cos^2(√n t) = 1/(n+1)` holds only for `n = 3`, giving
/// `±2π/√27 + 2πj/√3`.  Returns the first `count` positive times, each
/// confirmed by the closed-form verdict.
pub fn global_star_check(n: usize, count: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::Precondition("a star needs at least one leaf".into()));
    }
    let candidates: Vec<f64> = if n == 1 {
        (0..count).map(|j| PI / 4.0 + j as f64 * PI / 2.0).collect()
    } else {
        // (1 - n/2)^2 = 1/(n+1)  ⇔  (2 - n)^2 (n + 1) = 4.
        let ni = n as i64;
        if (2 - ni) * (2 - ni) * (ni + 1) != 4 {
            return Ok(Vec::new());
        }
        let root = (n as f64).sqrt();
        let phi = (1.0 - n as f64 / 2.0).acos();
        let mut out = Vec::new();
        let mut j = 0usize;
        while out.len() < count {
            for angle in [2.0 * PI * j as f64 - phi, 2.0 * PI * j as f64 + phi] {
                if angle > 0.0 && out.len() < count {
                    out.push(angle / root);
                }
            }
            j += 1;
        }
        out
    };
    let mut confirmed = Vec::new();
    for t in candidates {
        if star_transition(n, t)?.verdict().flat {
            confirmed.push(t);
        }
    }
    Ok(confirmed)
}

/// `2π/√27`, the earliest mixing time of the claw `K_{1,3}`.
pub fn claw_time() -> f64 {
    2.0 * PI / 27f64.sqrt()
}

/// Dense-oracle verdict for the `m`-fold Cartesian power of `K_{1,3}` at `t`.
pub fn claw_power_check(m: usize, t: f64) -> Result<MixingVerdict> {
    if m == 0 {
        return Err(Error::Precondition("power must be at least one".into()));
    }
    let order = 4usize.checked_pow(m as u32).unwrap_or(usize::MAX);
    if order > crate::limits::DENSE_CAP {
        return Err(Error::MatrixTooLarge { n: order, cap: crate::limits::DENSE_CAP });
    }
    let a = Adjacency::star(3)?.cartesian_power(m)?;
    Ok(crate::dense::is_uniform_mixing_dense(&a, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::dense_transition;

    #[test]
    fn identity_at_zero() {
        let s = star_transition(4, 0.0).unwrap();
        assert_eq!(s.corner, Complex64::new(1.0, 0.0));
        assert_eq!(s.leaf_offdiag, Complex64::new(0.0, 0.0));
        assert_eq!(s.leaf_diag, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn claw_is_flat() {
        let v = star_transition(3, claw_time()).unwrap().verdict();
        assert!(v.flat, "{v:?}");
        assert_eq!(global_star_check(3, 3).unwrap().len(), 3);
        assert!((global_star_check(3, 1).unwrap()[0] - claw_time()).abs() < 1e-12);
    }

    #[test]
    fn four_leaves_transfer() {
        let s = star_transition(4, PI / 4.0).unwrap();
        assert!(s.corner.norm() < 1e-12);
        assert!((s.edge_amp - Complex64::new(0.0, 0.5)).norm() < 1e-12);
    }

    #[test]
    fn closed_form_matches_dense() {
        for n in 1..=6 {
            let a = Adjacency::star(n).unwrap();
            for t in [0.3, 1.7, 4.1] {
                let u = dense_transition(&a, t);
                let s = star_transition(n, t).unwrap().matrix();
                assert!((u - s).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn no_global_mixing_except_claw() {
        for n in [2, 4, 5, 6, 7, 8, 9, 10] {
            assert!(global_star_check(n, 4).unwrap().is_empty(), "n = {n}");
        }
        assert!((global_star_check(1, 1).unwrap()[0] - PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn local_times() {
        let t = local_mixing_times(1, 1).unwrap();
        assert!((t[0] - PI / 4.0).abs() < 1e-12);
        let t = local_mixing_times(3, 2).unwrap();
        assert!((t[0] - PI / 27f64.sqrt()).abs() < 1e-12);
        assert!((t[1] - claw_time()).abs() < 1e-12);
    }

    #[test]
    fn claw_square() {
        assert!(claw_power_check(2, claw_time()).unwrap().flat);
        assert!(!claw_power_check(2, PI / 4.0).unwrap().flat);
        assert!(claw_power_check(6, claw_time()).is_err());
    }
}
