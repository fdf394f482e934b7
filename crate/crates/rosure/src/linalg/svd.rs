use super::{dot, DenseMatrix};

/// Thin singular value decomposition `M = U * diag(sigma) * V^T` with
/// `k = min(rows, cols)` columns in `u` and `v` and `sigma` descending.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: DenseMatrix,
    pub sigma: Vec<f64>,
    pub v: DenseMatrix,
}

impl Svd {
    /// `U * diag(sigma) * V^T`, skipping numerically zero singular values.
    pub fn reconstruct(&self) -> DenseMatrix {
        let m = self.u.rows();
        let n = self.v.rows();
        let mut out = DenseMatrix::zeros(m, n);
        for (r, &s) in self.sigma.iter().enumerate() {
            if s == 0.0 {
                continue;
            }
            for i in 0..m {
                let uis = self.u.get(i, r) * s;
                if uis == 0.0 {
                    continue;
                }
                let row = out.row_mut(i);
                for (j, slot) in row.iter_mut().enumerate() {
                    *slot += uis * self.v.get(j, r);
                }
            }
        }
        out
    }

    /// Count of singular values above `rel_tol * sigma_max`.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let smax = self.sigma.first().copied().unwrap_or(0.0);
        self.sigma.iter().filter(|&&s| s > rel_tol * smax).count()
    }
}

const SWEEP_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 60;

/// One-sided Jacobi SVD. Rotations repeatedly orthogonalize column pairs
/// of a working copy; singular values are the final column norms.
///
/// Internally operates on the transpose so each column lives in contiguous
/// memory. Inputs with huge entries are rescaled to avoid overflow in the
/// Gram accumulations.
pub fn jacobi_svd(m: &DenseMatrix) -> Svd {
    if m.rows() < m.cols() {
        let t = jacobi_svd(&m.transpose());
        return Svd { u: t.v, sigma: t.sigma, v: t.u };
    }
    let (rows, cols) = m.shape();

    let max_abs = m.max_abs();
    let scale = if max_abs > 1e150 { max_abs } else { 1.0 };

    // bt row j holds column j of the (possibly rescaled) input.
    let mut bt = DenseMatrix::from_fn(cols, rows, |j, i| m.get(i, j) / scale);
    // vt row j holds column j of V.
    let mut vt = DenseMatrix::identity(cols);

    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let (app, aqq, apq) = gram_pair(bt.row(p), bt.row(q));
                if app == 0.0 || aqq == 0.0 {
                    continue;
                }
                if apq.abs() <= SWEEP_TOL * (app * aqq).sqrt() {
                    continue;
                }
                let (c, s) = rotation(app, aqq, apq);
                rotate_rows(&mut bt, p, q, c, s);
                rotate_rows(&mut vt, p, q, c, s);
                rotated = true;
            }
        }
        if !rotated {
            break;
        }
    }

    // Column norms, sorted descending (ties keep original order).
    let k = cols; // thin SVD size; rows >= cols here
    let mut order: Vec<usize> = (0..cols).collect();
    let sigmas_unsorted: Vec<f64> = (0..cols)
        .map(|j| dot(bt.row(j), bt.row(j)).sqrt())
        .collect();
    order.sort_by(|&a, &b| {
        sigmas_unsorted[b]
            .partial_cmp(&sigmas_unsorted[a])
            .unwrap()
            .then(a.cmp(&b))
    });

    let mut sigma = Vec::with_capacity(k);
    let mut ut = DenseMatrix::zeros(k, rows); // row r = column r of U
    let mut zero_positions = Vec::new();
    for (r, &j) in order.iter().enumerate() {
        let s = sigmas_unsorted[j];
        sigma.push(s * scale);
        if s > 0.0 {
            let src = bt.row(j);
            let dst = ut.row_mut(r);
            for (d, &x) in dst.iter_mut().zip(src) {
                *d = x / s;
            }
        } else {
            zero_positions.push(r);
        }
    }
    complete_orthonormal_rows(&mut ut, &zero_positions);

    let u = DenseMatrix::from_fn(rows, k, |i, r| ut.get(r, i));
    let v = DenseMatrix::from_fn(cols, k, |j, r| vt.get(order[r], j));
    Svd { u, sigma, v }
}

fn gram_pair(bp: &[f64], bq: &[f64]) -> (f64, f64, f64) {
    let mut app = 0.0;
    let mut aqq = 0.0;
    let mut apq = 0.0;
    for (&x, &y) in bp.iter().zip(bq) {
        app += x * x;
        aqq += y * y;
        apq += x * y;
    }
    (app, aqq, apq)
}

/// Rotation diagonalizing the 2x2 Gram block [[app, apq], [apq, aqq]].
fn rotation(app: f64, aqq: f64, apq: f64) -> (f64, f64) {
    let tau = (aqq - app) / (2.0 * apq);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, c * t)
}

fn rotate_rows(m: &mut DenseMatrix, p: usize, q: usize, c: f64, s: f64) {
    let cols = m.cols();
    let (lo, hi) = if p < q { (p, q) } else { (q, p) };
    let (head, tail) = m.as_mut_slice().split_at_mut(hi * cols);
    let row_lo = &mut head[lo * cols..(lo + 1) * cols];
    let row_hi = &mut tail[..cols];
    let (rp, rq) = if lo == p { (row_lo, row_hi) } else { (row_hi, row_lo) };
    for (x, y) in rp.iter_mut().zip(rq.iter_mut()) {
        let xp = *x;
        let yq = *y;
        *x = c * xp - s * yq;
        *y = s * xp + c * yq;
    }
}

/// Fills the listed rows with unit vectors orthogonal to every other row.
/// Candidates are canonical basis vectors, orthogonalized by two passes of
/// Gram-Schmidt.
fn complete_orthonormal_rows(ut: &mut DenseMatrix, positions: &[usize]) {
    if positions.is_empty() {
        return;
    }
    let dim = ut.cols();
    let total = ut.rows();
    let mut candidate = 0usize;
    for &r in positions {
        loop {
            assert!(candidate < dim, "ran out of basis candidates");
            let mut w = vec![0.0; dim];
            w[candidate] = 1.0;
            candidate += 1;
            for _pass in 0..2 {
                for other in 0..total {
                    if other == r || (positions.contains(&other) && other > r) {
                        continue;
                    }
                    let proj = dot(&w, ut.row(other));
                    for (wi, &ui) in w.iter_mut().zip(ut.row(other)) {
                        *wi -= proj * ui;
                    }
                }
            }
            let n = dot(&w, &w).sqrt();
            if n > 0.5 {
                for x in w.iter_mut() {
                    *x /= n;
                }
                ut.row_mut(r).copy_from_slice(&w);
                break;
            }
        }
    }
}
