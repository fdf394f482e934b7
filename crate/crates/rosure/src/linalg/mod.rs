//! Dense linear-algebra kernels: the matrix type, norms, the l1 proximal
//! operator, spectral-norm estimation and Jacobi decompositions.
//!
//! Everything here is a pure function on immutable inputs and is safe to
//! call from multiple threads. All kernels are sequential and deterministic.

mod eigh;
mod power;
mod svd;

pub use eigh::{jacobi_eigh, Eigh};
pub use power::{spectral_norm, spectral_norm_with_start, SpectralEstimate};
pub use svd::{jacobi_svd, Svd};

use crate::error::{Error, Result};

/// Double-precision dense real matrix in row-major layout.
///
/// Invariants: `rows >= 1`, `cols >= 1`, `data.len() == rows * cols`,
/// and every entry is finite.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be >= 1");
        DenseMatrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Builds a matrix from row-major data, validating shape and finiteness.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows < 1 || cols < 1 {
            return Err(Error::invalid(format!(
                "matrix dimensions must be >= 1, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::invalid(format!(
                "data length {} does not match {rows}x{cols}",
                data.len()
            )));
        }
        if let Some(idx) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!(
                "non-finite entry at ({}, {})",
                idx / cols,
                idx % cols
            )));
        }
        Ok(DenseMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = DenseMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> DenseMatrix {
        self.map(|v| v * s)
    }

    pub fn add(&self, other: &DenseMatrix) -> DenseMatrix {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &DenseMatrix) -> DenseMatrix {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &DenseMatrix, f: impl Fn(f64, f64) -> f64) -> DenseMatrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(other.data.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// `self * other`. Zero entries of the left factor are skipped, which
    /// makes products with sparse coefficient matrices cheap.
    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let a_row = self.row(i);
            let out_row = out.row_mut(i);
            for (k, &aik) in a_row.iter().enumerate() {
                if aik == 0.0 {
                    continue;
                }
                let b_row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += aik * b;
                }
            }
        }
        out
    }

    /// `self^T * other`.
    pub fn matmul_at_b(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.rows, other.rows, "row counts must agree");
        let mut out = DenseMatrix::zeros(self.cols, other.cols);
        for k in 0..self.rows {
            let a_row = self.row(k);
            let b_row = other.row(k);
            for (i, &aki) in a_row.iter().enumerate() {
                if aki == 0.0 {
                    continue;
                }
                let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += aki * b;
                }
            }
        }
        out
    }

    /// `self * other^T`.
    pub fn matmul_a_bt(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.cols, "column counts must agree");
        let mut out = DenseMatrix::zeros(self.rows, other.rows);
        for i in 0..self.rows {
            let a_row = self.row(i);
            for j in 0..other.rows {
                out.data[i * other.rows + j] = dot(a_row, other.row(j));
            }
        }
        out
    }

    /// `self * v`.
    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "vector length must match columns");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// `self^T * v`.
    pub fn matvec_t(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.rows, v.len(), "vector length must match rows");
        let mut out = vec![0.0; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0.0 {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o += vi * a;
            }
        }
        out
    }

    /// Zeroes the diagonal in place; only meaningful for square matrices.
    pub fn zero_diagonal(&mut self) {
        let n = self.rows.min(self.cols);
        for i in 0..n {
            self.data[i * self.cols + i] = 0.0;
        }
    }
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub fn frobenius_norm(m: &DenseMatrix) -> f64 {
    m.as_slice().iter().map(|&v| v * v).sum::<f64>().sqrt()
}

/// Entrywise sum of absolute values.
pub fn l1_norm(m: &DenseMatrix) -> f64 {
    m.as_slice().iter().map(|&v| v.abs()).sum()
}

/// Number of entries with `|v| > eps`. The threshold is always explicit;
/// sparsity claims depend on it.
pub fn l0_count(m: &DenseMatrix, eps: f64) -> usize {
    m.as_slice().iter().filter(|v| v.abs() > eps).count()
}

#[inline]
pub fn soft_threshold_scalar(x: f64, alpha: f64) -> f64 {
    if x > alpha {
        x - alpha
    } else if x < -alpha {
        x + alpha
    } else {
        0.0
    }
}

/// Entrywise shrinkage `sign(m) * max(|m| - alpha, 0)`, the l1 proximal
/// operator.
pub fn soft_threshold(m: &DenseMatrix, alpha: f64) -> Result<DenseMatrix> {
    if alpha < 0.0 || !alpha.is_finite() {
        return Err(Error::invalid(format!(
            "soft-threshold level must be finite and >= 0, got {alpha}"
        )));
    }
    Ok(m.map(|v| soft_threshold_scalar(v, alpha)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rows: usize, cols: usize, seed: u64) -> DenseMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        DenseMatrix::from_fn(rows, cols, |_, _| rng.random_range(-1.0..1.0))
    }

    #[test]
    fn soft_threshold_examples() {
        let m = DenseMatrix::from_vec(1, 1, vec![1.2]).unwrap();
        let out = soft_threshold(&m, 0.5).unwrap();
        assert!((out.get(0, 0) - 0.7).abs() < 1e-15);

        let m = random_matrix(4, 3, 1);
        let out = soft_threshold(&m, 0.0).unwrap();
        assert_eq!(out, m);

        let m = DenseMatrix::from_vec(1, 2, vec![-0.3, 2.0]).unwrap();
        let out = soft_threshold(&m, 1.0).unwrap();
        assert_eq!(out.get(0, 0), 0.0);
        assert!((out.get(0, 1) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn soft_threshold_rejects_negative_alpha() {
        let m = DenseMatrix::zeros(2, 2);
        assert!(soft_threshold(&m, -1.0).is_err());
    }

    /// The shrinkage must be the exact minimizer of
    /// `alpha*|z| + 0.5*(z - x)^2`, checked by refined grid search.
    #[test]
    fn soft_threshold_minimizes_scalar_prox() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let x: f64 = rng.random_range(-3.0..3.0);
            let alpha: f64 = rng.random_range(0.0..2.0);
            let ours = soft_threshold_scalar(x, alpha);
            let oracle = grid_search_prox(x, alpha);
            assert!(
                (ours - oracle).abs() < 1e-9,
                "prox mismatch: x={x} alpha={alpha} ours={ours} oracle={oracle}"
            );
        }
    }

    pub fn grid_search_prox(x: f64, alpha: f64) -> f64 {
        let objective = |z: f64| alpha * z.abs() + 0.5 * (z - x) * (z - x);
        let mut lo = -x.abs() - alpha - 1.0;
        let mut hi = x.abs() + alpha + 1.0;
        let mut best = 0.0;
        for _ in 0..8 {
            let step = (hi - lo) / 400.0;
            let mut best_val = f64::INFINITY;
            for k in 0..=400 {
                let z = lo + step * k as f64;
                let v = objective(z);
                if v < best_val {
                    best_val = v;
                    best = z;
                }
            }
            lo = best - step;
            hi = best + step;
        }
        best
    }

    #[test]
    fn norms_match_naive_oracle() {
        let m = random_matrix(10, 10, 2);
        let mut fro = 0.0;
        let mut l1 = 0.0;
        let mut l0 = 0usize;
        for i in 0..10 {
            for j in 0..10 {
                let v = m.get(i, j);
                fro += v * v;
                l1 += v.abs();
                if v.abs() > 0.5 {
                    l0 += 1;
                }
            }
        }
        assert_eq!(frobenius_norm(&m), fro.sqrt());
        assert_eq!(l1_norm(&m), l1);
        assert_eq!(l0_count(&m, 0.5), l0);
    }

    #[test]
    fn norms_on_fixed_values() {
        let z = DenseMatrix::zeros(3, 4);
        assert_eq!(frobenius_norm(&z), 0.0);
        assert_eq!(l1_norm(&z), 0.0);
        assert_eq!(l0_count(&z, 0.0), 0);

        let m = DenseMatrix::from_vec(1, 2, vec![3.0, -4.0]).unwrap();
        assert_eq!(frobenius_norm(&m), 5.0);
        assert_eq!(l1_norm(&m), 7.0);
    }

    #[test]
    fn matmul_matches_naive() {
        let a = random_matrix(7, 5, 3);
        let b = random_matrix(5, 6, 4);
        let c = a.matmul(&b);
        for i in 0..7 {
            for j in 0..6 {
                let mut s = 0.0;
                for k in 0..5 {
                    s += a.get(i, k) * b.get(k, j);
                }
                assert!((c.get(i, j) - s).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn transposed_products_match_explicit_transpose() {
        let a = random_matrix(6, 4, 5);
        let b = random_matrix(6, 3, 6);
        let atb = a.matmul_at_b(&b);
        let atb_ref = a.transpose().matmul(&b);
        for (x, y) in atb.as_slice().iter().zip(atb_ref.as_slice()) {
            assert!((x - y).abs() < 1e-12);
        }

        let c = random_matrix(5, 4, 7);
        let abt = a.matmul_a_bt(&c);
        let abt_ref = a.matmul(&c.transpose());
        for (x, y) in abt.as_slice().iter().zip(abt_ref.as_slice()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn from_vec_validates() {
        assert!(DenseMatrix::from_vec(2, 2, vec![1.0; 3]).is_err());
        assert!(DenseMatrix::from_vec(0, 2, vec![]).is_err());
        assert!(DenseMatrix::from_vec(1, 2, vec![1.0, f64::NAN]).is_err());
    }
}
