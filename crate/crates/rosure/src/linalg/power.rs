use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use super::DenseMatrix;
use crate::error::{Error, Result};

/// Largest-singular-value estimate from power iteration.
#[derive(Debug, Clone, Copy)]
pub struct SpectralEstimate {
    pub value: f64,
    pub converged: bool,
    pub iterations: usize,
}

/// Largest singular value of `m` via power iteration on `m^T m`, starting
/// from the normalized all-ones vector. Deterministic; if the iterate
/// collapses into the null space, restarts from a seeded random vector.
pub fn spectral_norm(m: &DenseMatrix, tol: f64, max_iter: usize) -> Result<SpectralEstimate> {
    let mut v = vec![1.0 / (m.cols() as f64).sqrt(); m.cols()];
    spectral_norm_with_start(m, &mut v, tol, max_iter)
}

/// Power iteration seeded with `v0`, which is normalized in place and left
/// holding the final right singular vector estimate for warm restarts.
pub fn spectral_norm_with_start(
    m: &DenseMatrix,
    v0: &mut Vec<f64>,
    tol: f64,
    max_iter: usize,
) -> Result<SpectralEstimate> {
    if m.max_abs() == 0.0 {
        return Err(Error::degenerate("spectral norm of a zero matrix"));
    }
    assert_eq!(v0.len(), m.cols(), "start vector length must match columns");

    let scale = m.max_abs();
    normalize_or_reseed(v0, 0);

    let mut sigma_prev = 0.0;
    let mut sigma = 0.0;
    let mut reseeds = 0usize;
    for it in 1..=max_iter {
        let u = m.matvec(v0);
        let un = norm(&u);
        // sigma = ||M v|| with ||v|| = 1 is a lower bound on the true value
        // that is nondecreasing along the iteration.
        sigma = un;
        let mut w = m.matvec_t(&u);
        let wn = norm(&w);
        if wn <= f64::MIN_POSITIVE.sqrt() * scale {
            // v landed in the null space of M^T M; re-randomize.
            reseeds += 1;
            if reseeds > 8 {
                return Ok(SpectralEstimate { value: sigma, converged: false, iterations: it });
            }
            reseed(v0, reseeds as u64);
            sigma_prev = 0.0;
            continue;
        }
        for x in w.iter_mut() {
            *x /= wn;
        }
        *v0 = w;
        if it > 1 && (sigma - sigma_prev).abs() <= tol * sigma.max(f64::MIN_POSITIVE) {
            return Ok(SpectralEstimate { value: sigma, converged: true, iterations: it });
        }
        sigma_prev = sigma;
    }
    Ok(SpectralEstimate { value: sigma, converged: false, iterations: max_iter })
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|&x| x * x).sum::<f64>().sqrt()
}

fn normalize_or_reseed(v: &mut Vec<f64>, attempt: u64) {
    let n = norm(v);
    if n > 0.0 && n.is_finite() {
        for x in v.iter_mut() {
            *x /= n;
        }
    } else {
        reseed(v, attempt);
    }
}

fn reseed(v: &mut Vec<f64>, attempt: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0000 + attempt);
    for x in v.iter_mut() {
        *x = rng.random_range(-1.0..1.0);
    }
    let n = norm(v);
    for x in v.iter_mut() {
        *x /= n;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frobenius_norm, jacobi_svd};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_has_unit_norm() {
        let m = DenseMatrix::identity(5);
        let est = spectral_norm(&m, 1e-12, 100).unwrap();
        assert!((est.value - 1.0).abs() < 1e-10);
        assert!(est.converged);
    }

    #[test]
    fn diagonal_matrix() {
        let m = DenseMatrix::from_vec(2, 2, vec![3.0, 0.0, 0.0, 1.0]).unwrap();
        let est = spectral_norm(&m, 1e-12, 500).unwrap();
        assert!((est.value - 3.0).abs() < 1e-9);
    }

    #[test]
    fn matches_jacobi_svd_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let m = DenseMatrix::from_fn(20, 20, |_, _| rng.random_range(-1.0..1.0));
            let est = spectral_norm(&m, 1e-11, 5000).unwrap();
            let svd = jacobi_svd(&m);
            let reference = svd.sigma[0];
            assert!(
                (est.value - reference).abs() <= 1e-8 * reference,
                "power {} vs svd {}",
                est.value,
                reference
            );
        }
    }

    #[test]
    fn zero_matrix_is_degenerate() {
        let m = DenseMatrix::zeros(3, 3);
        assert!(spectral_norm(&m, 1e-10, 10).is_err());
    }

    #[test]
    fn ones_start_in_null_space_recovers() {
        // Row vector [1, -1]: the all-ones start is in the null space.
        let m = DenseMatrix::from_vec(1, 2, vec![1.0, -1.0]).unwrap();
        let est = spectral_norm(&m, 1e-12, 200).unwrap();
        assert!((est.value - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn bounded_by_frobenius_and_tight_on_rank_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let m = DenseMatrix::from_fn(8, 6, |_, _| rng.random_range(-1.0..1.0));
            let est = spectral_norm(&m, 1e-10, 2000).unwrap();
            assert!(est.value <= frobenius_norm(&m) * (1.0 + 1e-9));
        }
        // Rank-1: spectral norm equals the Frobenius norm.
        let u: Vec<f64> = (0..7).map(|i| (i as f64) - 2.5).collect();
        let v: Vec<f64> = (0..5).map(|i| 0.5 * (i as f64) + 1.0).collect();
        let m = DenseMatrix::from_fn(7, 5, |i, j| u[i] * v[j]);
        let est = spectral_norm(&m, 1e-12, 2000).unwrap();
        assert!((est.value - frobenius_norm(&m)).abs() < 1e-9 * frobenius_norm(&m));
    }
}
