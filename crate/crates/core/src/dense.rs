//! Dense adjacency matrices and the spectral oracle `U(t) = exp(itA)`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::cayley::ConnectionSet;
use crate::error::{Error, Result};
use crate::limits::{check_cap, pow_saturating, DENSE_CAP};
use crate::verdict::{Method, MixingVerdict};
use crate::zq::{all_vectors, minimum_distance, Submodule, ZqVector};

/// A symmetric 0/1 matrix of order at most [`DENSE_CAP`].
#[derive(Clone, Debug, PartialEq)]
pub struct Adjacency {
    matrix: DMatrix<f64>,
}

fn check_order(n: usize) -> Result<()> {
    if n > DENSE_CAP {
        Err(Error::MatrixTooLarge { n, cap: DENSE_CAP })
    } else if n == 0 {
        Err(Error::Precondition("graph must have at least one vertex".into()))
    } else {
        Ok(())
    }
}

impl Adjacency {
    pub fn from_matrix(matrix: DMatrix<f64>) -> Result<Self> {
        check_order(matrix.nrows())?;
        if !matrix.is_square() || matrix != matrix.transpose() || matrix.iter().any(|&x| x != 0.0 && x != 1.0) {
            return Err(Error::NotSymmetric);
        }
        Ok(Adjacency { matrix })
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSymmetric);
        }
        Self::from_matrix(DMatrix::from_fn(n, n, |i, j| rows[i][j] as f64))
    }

    fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        check_order(n)?;
        let mut m = DMatrix::zeros(n, n);
        for (i, j) in edges {
            m[(i, j)] = 1.0;
            m[(j, i)] = 1.0;
        }
        Ok(Adjacency { matrix: m })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::from_edges(n, std::iter::empty())
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::from_edges(n, (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))))
    }

    /// `K_{1,n}` with the central vertex first.
    pub fn star(n: usize) -> Result<Self> {
        Self::from_edges(n + 1, (1..=n).map(|j| (0, j)))
    }

    /// Vertices `Z_q^d` in index order, `x ~ x + c` for `c ∈ C`.
    pub fn cayley(c: &ConnectionSet) -> Result<Self> {
        let n = pow_saturating(c.q(), c.dim());
        check_order(n.min(usize::MAX as u128) as usize)?;
        let edges: Vec<(usize, usize)> = all_vectors(c.q(), c.dim())
            .flat_map(|x| {
                c.elements().iter().map(move |e| (x.index(), x.add_unchecked(e).index())).collect::<Vec<_>>()
            })
            .collect();
        Self::from_edges(n as usize, edges)
    }

    /// The distance graph of `H(d, q)` for the given distances.
    pub fn distance_graph(d: usize, q: u32, classes: &[usize]) -> Result<Self> {
        Self::cayley(&ConnectionSet::distance_classes(d, q, classes)?)
    }

    /// `H(d, q)/Γ` built directly from cosets: two cosets are adjacent when
    /// some pair of their elements is at Hamming distance one. Vertex 0 is `Γ`.
    pub fn hamming_quotient(gamma: &Submodule) -> Result<Self> {
        let (q, d) = (gamma.q(), gamma.dim());
        match minimum_distance(gamma) {
            Ok(md) if md < 3 => return Err(Error::DistanceTooSmall(md)),
            Ok(_) | Err(Error::ZeroModule) => {}
            Err(e) => return Err(e),
        }
        let total = pow_saturating(q, d);
        check_cap(total)?;
        let elements = gamma.elements()?;
        let n_cosets = total as usize / elements.len();
        check_order(n_cosets)?;
        let mut label = vec![usize::MAX; total as usize];
        let mut reps: Vec<ZqVector> = Vec::with_capacity(n_cosets);
        for v in all_vectors(q, d) {
            if label[v.index()] == usize::MAX {
                for g in elements {
                    label[v.add_unchecked(g).index()] = reps.len();
                }
                reps.push(v);
            }
        }
        let mut edges = Vec::new();
        for (i, v) in reps.iter().enumerate() {
            for j in 0..d {
                for l in 1..q {
                    let w = v.add_unchecked(&ZqVector::basis(q, d, j).scale(l));
                    edges.push((i, label[w.index()]));
                }
            }
        }
        Self::from_edges(n_cosets, edges)
    }

    /// `A1 ⊗ I + I ⊗ A2`.
    pub fn cartesian_product(&self, other: &Adjacency) -> Result<Self> {
        let (n1, n2) = (self.order(), other.order());
        check_order(n1.saturating_mul(n2))?;
        let m = self.matrix.kronecker(&DMatrix::identity(n2, n2)) + DMatrix::identity(n1, n1).kronecker(&other.matrix);
        Ok(Adjacency { matrix: m })
    }

    /// The `m`-fold Cartesian power.
    pub fn cartesian_power(&self, m: usize) -> Result<Self> {
        if m == 0 {
            return Self::empty(1);
        }
        let mut acc = self.clone();
        for _ in 1..m {
            acc = acc.cartesian_product(self)?;
        }
        Ok(acc)
    }

    pub fn order(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.matrix.row_iter().map(|r| r.iter().filter(|&&x| x != 0.0).count()).collect()
    }

    pub fn is_regular(&self) -> bool {
        let d = self.degrees();
        d.windows(2).all(|w| w[0] == w[1])
    }

    pub fn spectrum(&self) -> DenseWalk {
        DenseWalk::new(self)
    }
}

/// Eigendecomposition `A = V Λ Vᵀ`, reused for many times `t`.
#[derive(Clone, Debug)]
pub struct DenseWalk {
    pub eigenvalues: DVector<f64>,
    pub eigenvectors: DMatrix<f64>,
}

impl DenseWalk {
    pub fn new(a: &Adjacency) -> Self {
        let eig = SymmetricEigen::new(a.matrix.clone());
        DenseWalk { eigenvalues: eig.eigenvalues, eigenvectors: eig.eigenvectors }
    }

    pub fn order(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Sorted eigenvalues.
    pub fn sorted_eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.eigenvalues.iter().copied().collect();
        v.sort_by(f64::total_cmp);
        v
    }

    /// The full matrix `U(t)`, assembled as `V cos(tΛ) Vᵀ + i V sin(tΛ) Vᵀ`.
    pub fn transition(&self, t: f64) -> DMatrix<Complex64> {
        let v = &self.eigenvectors;
        let cos = DVector::from_iterator(self.order(), self.eigenvalues.iter().map(|l| (l * t).cos()));
        let sin = DVector::from_iterator(self.order(), self.eigenvalues.iter().map(|l| (l * t).sin()));
        let mut vc = v.clone();
        let mut vs = v.clone();
        for (k, mut col) in vc.column_iter_mut().enumerate() {
            col *= cos[k];
        }
        for (k, mut col) in vs.column_iter_mut().enumerate() {
            col *= sin[k];
        }
        let re = &vc * v.transpose();
        let im = &vs * v.transpose();
        DMatrix::from_fn(self.order(), self.order(), |i, j| Complex64::new(re[(i, j)], im[(i, j)]))
    }

    /// Row (equivalently column) `u` of `U(t)`.
    pub fn row(&self, u: usize, t: f64) -> Vec<Complex64> {
        let v = &self.eigenvectors;
        let n = self.order();
        let weights: Vec<Complex64> =
            (0..n).map(|k| Complex64::from_polar(v[(u, k)], self.eigenvalues[k] * t)).collect();
        (0..n).map(|j| (0..n).map(|k| weights[k] * v[(j, k)]).sum()).collect()
    }

    /// Verdict on every entry of `U(t)`.
    pub fn verdict(&self, t: f64) -> MixingVerdict {
        let u = self.transition(t);
        MixingVerdict::from_entries(u.iter().copied(), self.order(), Method::DenseOracle)
    }

    /// Verdict on the column of vertex `u` only.
    pub fn local_verdict(&self, u: usize, t: f64) -> MixingVerdict {
        MixingVerdict::from_entries(self.row(u, t).into_iter(), self.order(), Method::DenseOracle)
    }
}

/// `exp(itA)` by full symmetric eigendecomposition.
pub fn dense_transition(a: &Adjacency, t: f64) -> DMatrix<Complex64> {
    a.spectrum().transition(t)
}

/// Uniform mixing of an arbitrary graph (all entries examined).
pub fn is_uniform_mixing_dense(a: &Adjacency, t: f64) -> MixingVerdict {
    a.spectrum().verdict(t)
}

/// Local uniform mixing from vertex `u`.
pub fn is_local_uniform_mixing(a: &Adjacency, t: f64, u: usize) -> Result<MixingVerdict> {
    if u >= a.order() {
        return Err(Error::IndexOutOfRange(format!("vertex {u} of {}", a.order())));
    }
    Ok(a.spectrum().local_verdict(u, t))
}

/// Unit test helper: `Σ_j |U_ij|^2` for every row.
pub fn row_norms(u: &DMatrix<Complex64>) -> Vec<f64> {
    u.row_iter().map(|r| r.iter().map(|z| z.norm_sqr()).sum()).collect()
}
