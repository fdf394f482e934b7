use super::DenseMatrix;
use crate::error::{Error, Result};

/// Full symmetric eigendecomposition, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct Eigh {
    pub values: Vec<f64>,
    /// Column i is the eigenvector for `values[i]`.
    pub vectors: DenseMatrix,
}

const SYMMETRY_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 60;

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
pub fn jacobi_eigh(s: &DenseMatrix) -> Result<Eigh> {
    let n = s.rows();
    if s.cols() != n {
        return Err(Error::invalid(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    let scale = s.max_abs().max(1.0);
    for i in 0..n {
        for j in (i + 1)..n {
            if (s.get(i, j) - s.get(j, i)).abs() > SYMMETRY_TOL * scale {
                return Err(Error::invalid(format!(
                    "matrix is not symmetric at ({i}, {j})"
                )));
            }
        }
    }

    let mut a = s.clone();
    // Exact symmetry so the rotation updates stay consistent.
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (a.get(i, j) + a.get(j, i));
            a.set(i, j, v);
            a.set(j, i, v);
        }
    }
    // qt row r accumulates eigenvector r.
    let mut qt = DenseMatrix::identity(n);

    let off = |a: &DenseMatrix| -> f64 {
        let mut sum = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                sum += 2.0 * a.get(i, j) * a.get(i, j);
            }
        }
        sum.sqrt()
    };
    let fro = {
        let f: f64 = a.as_slice().iter().map(|&v| v * v).sum();
        f.sqrt().max(f64::MIN_POSITIVE)
    };

    for _sweep in 0..MAX_SWEEPS {
        if off(&a) <= 1e-14 * fro {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sn = c * t;

                // Update the p/q rows and columns of A = J^T A J.
                a.set(p, p, app - t * apq);
                a.set(q, q, aqq + t * apq);
                a.set(p, q, 0.0);
                a.set(q, p, 0.0);
                for i in 0..n {
                    if i == p || i == q {
                        continue;
                    }
                    let aip = a.get(i, p);
                    let aiq = a.get(i, q);
                    let new_p = c * aip - sn * aiq;
                    let new_q = sn * aip + c * aiq;
                    a.set(i, p, new_p);
                    a.set(p, i, new_p);
                    a.set(i, q, new_q);
                    a.set(q, i, new_q);
                }
                rotate_rows(&mut qt, p, q, c, sn);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a.get(x, x).partial_cmp(&a.get(y, y)).unwrap().then(x.cmp(&y)));
    let values: Vec<f64> = order.iter().map(|&i| a.get(i, i)).collect();
    let vectors = DenseMatrix::from_fn(n, n, |i, r| qt.get(order[r], i));
    Ok(Eigh { values, vectors })
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
