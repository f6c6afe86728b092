//! Dense complex matrices and a cyclic Jacobi eigensolver for small
//! Hermitian problems.
//!
//! The solver embeds an `n x n` complex Hermitian matrix `H = A + iB`
//! into the real symmetric `2n x 2n` matrix `[[A, -B], [B, A]]`, whose
//! spectrum is that of `H` with every eigenvalue doubled, and runs
//! cyclic Jacobi sweeps on the embedding until the off-diagonal
//! Frobenius norm drops below tolerance.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Dimension cap for [`eigenvalues_hermitian`].
pub const EIGEN_DIM_MAX: usize = 8;

/// Default off-diagonal stopping tolerance for the Jacobi sweeps.
pub const JACOBI_TOL: f64 = 1e-12;

const JACOBI_MAX_SWEEPS: u32 = 100;

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    dim: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, *v);
            }
        }
        m
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, C64::new(*v, 0.0));
            }
        }
        m
    }

    /// Rank-1 projector `v v^dag` from a (not necessarily normalised) vector.
    pub fn outer(v: &[C64]) -> Self {
        let dim = v.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, v[i] * v[j].conj());
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(j, i).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Kronecker product, `self` on the left factor.
    pub fn kron(&self, other: &Self) -> Self {
        let n = self.dim;
        let m = other.dim;
        let mut out = Self::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out.set(i * m + k, j * m + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// `max_ij |self_ij - other_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max_ij |H_ij - conj(H_ji)|`.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// `tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> C64 {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += self.get(i, j) * other.get(j, i);
            }
        }
        acc
    }
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
#[derive(Clone, Debug)]
pub struct SpectralResult {
    pub eigenvalues: Vec<f64>,
    /// `max |V^T V - I|` of the accumulated Jacobi rotations.
    pub orthonormality_residual: f64,
}

/// Eigenvalues of a complex Hermitian matrix (dimension at most
/// [`EIGEN_DIM_MAX`]) by cyclic Jacobi on the real symmetric embedding.
///
/// `tol` bounds both the accepted hermiticity deviation of the input and
/// the off-diagonal Frobenius norm at which the sweeps stop
/// ([`JACOBI_TOL`] is the conventional choice).
pub fn eigenvalues_hermitian(h: &CMat, tol: f64) -> Result<SpectralResult> {
    let n = h.dim();
    if n > EIGEN_DIM_MAX {
        return Err(Error::MatrixTooLarge {
            dim: n,
            max: EIGEN_DIM_MAX,
        });
    }
    let herm_err = h.hermiticity_error();
    if herm_err > tol.max(JACOBI_TOL) {
        return Err(Error::NotHermitian {
            deviation: herm_err,
        });
    }

    // Real symmetric embedding [[A, -B], [B, A]] of H = A + iB; its
    // spectrum is the spectrum of H with every eigenvalue doubled.
    let m = 2 * n;
    let mut a = vec![vec![0.0f64; m]; m];
    for i in 0..n {
        for j in 0..n {
            // Symmetrise away the (sub-tolerance) hermiticity error.
            let hij = (h.get(i, j) + h.get(j, i).conj()) * 0.5;
            a[i][j] = hij.re;
            a[i + n][j + n] = hij.re;
            a[i][j + n] = -hij.im;
            a[i + n][j] = hij.im;
        }
    }

    let (mut eigs, residual) = jacobi_symmetric(&mut a, tol, JACOBI_MAX_SWEEPS)?;
    eigs.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let eigenvalues = (0..n).map(|i| eigs[2 * i]).collect();
    Ok(SpectralResult {
        eigenvalues,
        orthonormality_residual: residual,
    })
}

fn off_diagonal_norm(a: &[Vec<f64>]) -> f64 {
    let m = a.len();
    let mut acc = 0.0;
    for i in 0..m {
        for j in 0..m {
            if i != j {
                acc += a[i][j] * a[i][j];
            }
        }
    }
    acc.sqrt()
}

/// Cyclic Jacobi sweeps on a real symmetric matrix. Returns the
/// (unsorted) eigenvalues and the orthonormality residual of the
/// accumulated rotation matrix.
fn jacobi_symmetric(
    a: &mut [Vec<f64>],
    tol: f64,
    max_sweeps: u32,
) -> Result<(Vec<f64>, f64)> {
    let m = a.len();
    let mut v = vec![vec![0.0f64; m]; m];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }

    let mut converged = false;
    for _ in 0..max_sweeps {
        if off_diagonal_norm(a) <= tol {
            converged = true;
            break;
        }
        for p in 0..m {
            for q in (p + 1)..m {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for k in 0..m {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for k in 0..m {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged && off_diagonal_norm(a) > tol {
        return Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
        });
    }

    let eigs = (0..m).map(|i| a[i][i]).collect();

    let mut residual: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            let dot: f64 = (0..m).map(|k| v[k][i] * v[k][j]).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            residual = residual.max((dot - target).abs());
        }
    }
    Ok((eigs, residual))
}
