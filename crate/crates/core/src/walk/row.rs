use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;

use crate::cayley::{dft_group_ring, CayleyGraph};
use crate::cyclotomic::GroupRing;
use crate::error::Result;
use crate::verdict::{Method, MixingVerdict};

use super::WalkTime;

/// Largest `q^d · N` coefficient buffer the exact row path will allocate.
pub const EXACT_BUFFER_CAP: usize = 1 << 25;

/// Row sums `S_g = Σ_a e^{iθ_a t} ζ_q^{⟨a,g⟩}`; the transition amplitude is
/// `U(t)_{0,g} = S_g / q^d`.
#[derive(Clone, Debug)]
enum RowSums {
    /// `S_g ∈ Z[C_N]`, stored as `N` coefficients per vertex.
    Exact { order: u32, coeffs: Vec<i64> },
    Approx(Vec<Complex64>),
}

/// First row of `U(t)` for a Cayley graph, indexed by [`crate::zq::ZqVector::index`].
#[derive(Clone, Debug)]
pub struct TransitionRow {
    size: usize,
    sums: RowSums,
}

impl TransitionRow {
    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// True when the row was computed in exact cyclotomic arithmetic.
    pub fn is_exact(&self) -> bool {
        matches!(self.sums, RowSums::Exact { .. })
    }

    /// The unnormalized sum `S_g` in `Z[C_N]` (exact path only).
    pub fn exact_sum(&self, g: usize) -> Option<GroupRing<i128>> {
        match &self.sums {
            RowSums::Exact { order, coeffs } => {
                let n = *order as usize;
                let mut out = GroupRing::zero(*order);
                for (e, &c) in coeffs[g * n..(g + 1) * n].iter().enumerate() {
                    if c != 0 {
                        out.add_term(e as i64, c as i128);
                    }
                }
                Some(out)
            }
            RowSums::Approx(_) => None,
        }
    }

    pub fn amplitude(&self, g: usize) -> Complex64 {
        let scale = self.size as f64;
        match &self.sums {
            RowSums::Exact { .. } => self.exact_sum(g).expect("exact row").to_complex() / scale,
            RowSums::Approx(v) => v[g] / scale,
        }
    }

    pub fn amplitudes(&self) -> Vec<Complex64> {
        (0..self.size).into_par_iter().map(|g| self.amplitude(g)).collect()
    }

    /// Flatness of the row: exact `|S_g|^2 = q^d` for every `g` on the exact
    /// path, `max | q^d |U_0g|^2 - 1 | ≤ 1e-9` otherwise.
    pub fn verdict(&self) -> MixingVerdict {
        match &self.sums {
            RowSums::Exact { .. } => {
                let target = self.size as i128;
                let (flat, dev) = (0..self.size)
                    .into_par_iter()
                    .map(|g| {
                        let s = self.exact_sum(g).expect("exact row");
                        let norm = s.norm_sqr();
                        let ok = norm.is_integer(&target);
                        let dev = if ok { 0.0 } else { (norm.to_complex().re / target as f64 - 1.0).abs() };
                        (ok, dev)
                    })
                    .reduce(|| (true, 0.0), |a, b| (a.0 && b.0, a.1.max(b.1)));
                MixingVerdict::exact(flat, dev, Method::CharacterSum)
            }
            RowSums::Approx(_) => {
                MixingVerdict::from_entries(self.amplitudes().into_iter(), self.size, Method::CharacterSum)
            }
        }
    }

    /// `Σ_g |U_0g|^2`; exactly one on the exact path (checked in `Z[ζ_N]`).
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes().iter().map(|z| z.norm_sqr()).sum()
    }

    /// Exact unitarity check `Σ_g |S_g|^2 = q^{2d}` (exact path only).
    pub fn exact_unit_norm(&self) -> Option<bool> {
        let RowSums::Exact { order, .. } = &self.sums else { return None };
        let mut total = GroupRing::<i128>::zero(*order);
        for g in 0..self.size {
            let s = self.exact_sum(g)?;
            total.add_assign(&s.mul(&s.conj()));
        }
        let target = (self.size as i128) * (self.size as i128);
        Some(total.reduce().is_integer(&target))
    }
}

/// `U(t)_{0,g} = q^{-d} Σ_a e^{iψ_a(C)t} ψ_a(g)` for every `g`.
///
/// With integer eigenvalues and `t = 2π·num/den` every phase is a power of
/// `ζ_N`, `N = lcm(den, q)`, and the row is computed exactly; otherwise a
/// complex discrete Fourier transform is used.
pub fn transition_row(x: &CayleyGraph, t: &WalkTime) -> Result<TransitionRow> {
    let size = x.vertex_count()?;
    let table = x.eigenvalues()?;
    let (q, d) = (x.q(), x.dim());
    if let (Some((num, den)), Some(ints)) = (t.as_rational(), table.integers.as_ref()) {
        let order = (den as u64).lcm(&(q as u64));
        if order <= u32::MAX as u64 && size.saturating_mul(order as usize) <= EXACT_BUFFER_CAP {
            let n = order as usize;
            let scale = (order / den) as i128;
            let mut coeffs = vec![0i64; size * n];
            for (a, &theta) in ints.iter().enumerate() {
                let e = (theta as i128 * num as i128 * scale).rem_euclid(n as i128) as usize;
                coeffs[a * n + e] = 1;
            }
            dft_group_ring(q, d, order as u32, &mut coeffs);
            return Ok(TransitionRow { size, sums: RowSums::Exact { order: order as u32, coeffs } });
        }
    }
    let time = t.value();
    let mut data: Vec<Complex64> =
        table.real_values().into_iter().map(|theta| Complex64::from_polar(1.0, theta * time)).collect();
    dft_complex(q, d, &mut data);
    Ok(TransitionRow { size, sums: RowSums::Approx(data) })
}

/// In-place `out[g] = Σ_a in[a] ζ_q^{⟨a,g⟩}` over complex doubles.
pub(crate) fn dft_complex(q: u32, d: usize, data: &mut [Complex64]) {
    let qu = q as usize;
    let roots: Vec<Complex64> =
        (0..qu).map(|j| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / qu as f64)).collect();
    let mut stride = 1usize;
    for _ in 0..d {
        let block = stride * qu;
        data.par_chunks_mut(block).for_each(|chunk| {
            let mut line = vec![Complex64::new(0.0, 0.0); qu];
            for low in 0..stride {
                for l in 0..qu {
                    line[l] = chunk[low + l * stride];
                }
                for k in 0..qu {
                    chunk[low + k * stride] = (0..qu).map(|l| line[l] * roots[l * k % qu]).sum();
                }
            }
        });
        stride *= qu;
    }
}

/// Flatness of `U(t)`; the graph is vertex-transitive, so the first row decides.
pub fn is_uniform_mixing(x: &CayleyGraph, t: &WalkTime) -> Result<MixingVerdict> {
    Ok(transition_row(x, t)?.verdict())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::ConnectionSet;
    use crate::dense::{Adjacency, DenseWalk};

    fn hamming(d: usize, q: u32) -> CayleyGraph {
        CayleyGraph::hamming(d, q).unwrap()
    }

    #[test]
    fn time_zero_is_indicator() {
        let row = transition_row(&hamming(2, 3), &WalkTime::zero()).unwrap();
        assert!(row.is_exact());
        let amps = row.amplitudes();
        assert!((amps[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(amps[1..].iter().all(|z| z.norm() < 1e-12));
        assert!(!row.verdict().flat);
    }

    #[test]
    fn known_examples_are_exactly_flat() {
        let v = is_uniform_mixing(&hamming(1, 3), &WalkTime::two_pi_over(9)).unwrap();
        assert!(v.flat);
        assert_eq!(v.max_deviation, 0.0);
        assert!(is_uniform_mixing(&hamming(2, 3), &WalkTime::two_pi_over(9)).unwrap().flat);
        assert!(is_uniform_mixing(&hamming(3, 3), &WalkTime::two_pi_over(9)).unwrap().flat);
        assert!(is_uniform_mixing(&hamming(3, 2), &WalkTime::pi_times(1, 4)).unwrap().flat);
        assert!(is_uniform_mixing(&hamming(2, 4), &WalkTime::pi_times(1, 4)).unwrap().flat);
        assert!(!is_uniform_mixing(&hamming(2, 3), &WalkTime::pi_times(1, 4)).unwrap().flat);
    }

    #[test]
    fn exact_row_is_unit() {
        let row = transition_row(&hamming(3, 3), &WalkTime::rational(5, 27).unwrap()).unwrap();
        assert_eq!(row.exact_unit_norm(), Some(true));
    }

    #[test]
    fn float_and_exact_paths_agree_with_dense() {
        let c = ConnectionSet::distance_classes(3, 3, &[1, 2]).unwrap();
        let x = CayleyGraph::new(c.clone()).unwrap();
        let walk = DenseWalk::new(&Adjacency::cayley(&c).unwrap());
        for t in [WalkTime::two_pi_over(9), WalkTime::real(0.377)] {
            let row = transition_row(&x, &t).unwrap();
            let dense = walk.row(0, t.value());
            for (a, b) in row.amplitudes().iter().zip(&dense) {
                assert!((a - b).norm() < 1e-9);
            }
            assert!((row.norm_sqr() - 1.0).abs() < 1e-9);
        }
    }
}
