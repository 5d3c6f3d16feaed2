//! Small dense real linear algebra.
//!
//! All matrices are real, since coherent amplitudes and the beam-splitter
//! map are real here.

use std::fmt;
use std::ops::{Index, IndexMut};

use nalgebra::{Complex, Matrix4};

use crate::error::{EcsError, Result};

/// Row-major dense real matrix.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(EcsError::Dimension("matrix must have positive size".into()));
        }
        if data.len() != rows * cols {
            return Err(EcsError::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(EcsError::Invariant("matrix has non-finite entries".into()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_rows<const N: usize>(rows: &[[f64; N]]) -> Result<Self> {
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::new(rows.len(), N, data)
    }

    /// Outer product `v vᵀ`.
    pub fn outer(v: &[f64]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = v[i] * v[j];
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &DenseMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(EcsError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[k * rhs.cols + j];
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, rhs: &DenseMatrix) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(EcsError::Dimension(
                "cannot add matrices of different shape".into(),
            ));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, rhs: &DenseMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| (self[(i, j)] - self[(j, i)]).abs() <= tol))
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    s += self[(i, j)] * self[(i, j)];
                }
            }
        }
        s.sqrt()
    }

    fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{:+.6e}", self[(i, j)]))
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Eigen-decomposition of a real symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector for `values[k]`.
    pub vectors: DenseMatrix,
}

impl SymmetricEigen {
    pub fn reconstruct(&self) -> DenseMatrix {
        let lambda = DenseMatrix::from_diagonal(&self.values);
        let vl = self.vectors.matmul(&lambda).expect("square factors");
        vl.matmul(&self.vectors.transpose())
            .expect("square factors")
    }
}

pub const MAX_JACOBI_SWEEPS: usize = 100;
const SYMMETRY_TOL: f64 = 1e-10;

/// Cyclic Jacobi eigen-decomposition.
///
/// Each rotation zeroes one off-diagonal pair and lowers the off-diagonal
/// Frobenius norm by `sqrt(2)*|a_pq|`, so the norm is monotone across
/// sweeps. The iteration stops once the off-diagonal norm is negligible
/// relative to the whole matrix; running out of sweeps is an error.
pub fn symmetric_eigen(m: &DenseMatrix) -> Result<SymmetricEigen> {
    if !m.is_square() {
        return Err(EcsError::Dimension(format!(
            "symmetric_eigen needs a square matrix, got {}x{}",
            m.rows, m.cols
        )));
    }
    let scale = m.norm_inf().max(f64::MIN_POSITIVE);
    if !m.is_symmetric(SYMMETRY_TOL * scale.max(1.0)) {
        return Err(EcsError::Invariant(
            "symmetric_eigen input is not symmetric".into(),
        ));
    }
    let n = m.rows;
    let mut a = m.clone();
    // symmetrize away roundoff so rotations see an exactly symmetric matrix
    for i in 0..n {
        for j in 0..i {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = avg;
            a[(j, i)] = avg;
        }
    }
    let mut v = DenseMatrix::identity(n);
    let threshold = f64::EPSILON * a.frobenius();

    let mut sweeps = 0;
    let mut off = a.off_diagonal_norm();
    while off > threshold {
        if sweeps == MAX_JACOBI_SWEEPS {
            return Err(EcsError::Convergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                // theta overflowing to inf gives t = 0: the pair is already diagonal
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
        let next = a.off_diagonal_norm();
        debug_assert!(next <= off * (1.0 + 1e-12) + f64::MIN_POSITIVE);
        off = next;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = DenseMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, k)];
        }
    }
    Ok(SymmetricEigen { values, vectors })
}

fn rotate(a: &mut DenseMatrix, v: &mut DenseMatrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.rows;
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// Eigenvalues of a general real 4x4 matrix, sorted by descending real part.
pub fn nonsym_eigenvalues_4x4(m: &DenseMatrix) -> Result<[Complex<f64>; 4]> {
    if m.rows != 4 || m.cols != 4 {
        return Err(EcsError::Dimension(format!(
            "expected a 4x4 matrix, got {}x{}",
            m.rows, m.cols
        )));
    }
    let mat = Matrix4::from_row_slice(m.as_slice());
    let ev = mat.complex_eigenvalues();
    let mut out = [Complex::new(0.0, 0.0); 4];
    out.copy_from_slice(ev.as_slice());
    out.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
    Ok(out)
}

/// Which factor of a bipartite system survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    A,
    B,
}

/// Partial trace of a density matrix on `C^dA ⊗ C^dB` (index `i*dB + j`).
pub fn partial_trace(rho: &DenseMatrix, dims: (usize, usize), keep: Keep) -> Result<DenseMatrix> {
    let (da, db) = dims;
    if !rho.is_square() || rho.rows != da * db {
        return Err(EcsError::Dimension(format!(
            "partial_trace: {}x{} matrix does not match dims {da}x{db}",
            rho.rows, rho.cols
        )));
    }
    let out = match keep {
        Keep::A => {
            let mut r = DenseMatrix::zeros(da, da);
            for i in 0..da {
                for k in 0..da {
                    r[(i, k)] = (0..db).map(|j| rho[(i * db + j, k * db + j)]).sum();
                }
            }
            r
        }
        Keep::B => {
            let mut r = DenseMatrix::zeros(db, db);
            for j in 0..db {
                for l in 0..db {
                    r[(j, l)] = (0..da).map(|i| rho[(i * db + j, i * db + l)]).sum();
                }
            }
            r
        }
    };
    Ok(out)
}

/// Reduced density matrix of the pure state `psi` (index `i*dB + j`).
pub fn partial_trace_pure(psi: &[f64], dims: (usize, usize), keep: Keep) -> Result<DenseMatrix> {
    let (da, db) = dims;
    if psi.len() != da * db {
        return Err(EcsError::Dimension(format!(
            "partial_trace_pure: {} amplitudes for dims {da}x{db}",
            psi.len()
        )));
    }
    let out = match keep {
        Keep::A => {
            let mut r = DenseMatrix::zeros(da, da);
            for i in 0..da {
                let row_i = &psi[i * db..(i + 1) * db];
                for k in 0..=i {
                    let row_k = &psi[k * db..(k + 1) * db];
                    let s: f64 = row_i.iter().zip(row_k).map(|(x, y)| x * y).sum();
                    r[(i, k)] = s;
                    r[(k, i)] = s;
                }
            }
            r
        }
        Keep::B => {
            let mut r = DenseMatrix::zeros(db, db);
            for i in 0..da {
                let row = &psi[i * db..(i + 1) * db];
                for j in 0..db {
                    if row[j] == 0.0 {
                        continue;
                    }
                    for l in 0..db {
                        r[(j, l)] += row[j] * row[l];
                    }
                }
            }
            r
        }
    };
    Ok(out)
}

/// Transpose of the second factor of a bipartite matrix.
pub fn partial_transpose(rho: &DenseMatrix, dims: (usize, usize)) -> Result<DenseMatrix> {
    let (da, db) = dims;
    if !rho.is_square() || rho.rows != da * db {
        return Err(EcsError::Dimension(format!(
            "partial_transpose: {}x{} matrix does not match dims {da}x{db}",
            rho.rows, rho.cols
        )));
    }
    let mut out = DenseMatrix::zeros(rho.rows, rho.cols);
    for a in 0..da {
        for b in 0..db {
            for a2 in 0..da {
                for b2 in 0..db {
                    out[(a * db + b, a2 * db + b2)] = rho[(a * db + b2, a2 * db + b)];
                }
            }
        }
    }
    Ok(out)
}

/// `kron(x, y)` for vectors.
pub fn kron_vec(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter()
        .flat_map(|a| y.iter().map(move |b| a * b))
        .collect()
}
