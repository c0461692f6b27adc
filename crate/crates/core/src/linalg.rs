//! Minimal dense solver for the trainer's damped normal equations.

use alloc::vec;
use alloc::vec::Vec;

use crate::math;

/// Solve `A x = b` for a symmetric positive definite `A` (row-major,
/// `n x n`) via Cholesky factorization. Returns `None` when a pivot is
/// not strictly positive, i.e. the matrix is not PD at working
/// precision; the Levenberg-Marquardt loop reacts by raising its damping.
pub(crate) fn solve_spd(a: &[f64], n: usize, b: &[f64]) -> Option<Vec<f64>> {
    debug_assert_eq!(a.len(), n * n);
    debug_assert_eq!(b.len(), n);

    // Lower-triangular factor L with A = L * L^T.
    let mut l = vec![0.0f64; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a[i * n + j];
            for k in 0..j {
                sum -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if !(sum > 0.0) || !sum.is_finite() {
                    return None;
                }
                l[i * n + i] = math::sqrt(sum);
            } else {
                l[i * n + j] = sum / l[j * n + j];
            }
        }
    }

    // Forward substitution: L y = b.
    let mut y = vec![0.0f64; n];
    for i in 0..n {
        let mut sum = b[i];
        for k in 0..i {
            sum -= l[i * n + k] * y[k];
        }
        y[i] = sum / l[i * n + i];
    }

    // Back substitution: L^T x = y.
    let mut x = vec![0.0f64; n];
    for i in (0..n).rev() {
        let mut sum = y[i];
        for k in i + 1..n {
            sum -= l[k * n + i] * x[k];
        }
        x[i] = sum / l[i * n + i];
    }
    if x.iter().any(|v| !v.is_finite()) {
        return None;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_known_spd_system() {
        // A = [[4,2],[2,3]], b = [10, 8] -> x = [1.75, 1.5]
        let x = solve_spd(&[4.0, 2.0, 2.0, 3.0], 2, &[10.0, 8.0]).unwrap();
        assert!(math::abs(x[0] - 1.75) < 1e-12);
        assert!(math::abs(x[1] - 1.5) < 1e-12);
    }

    #[test]
    fn rejects_indefinite_matrix() {
        assert!(solve_spd(&[1.0, 2.0, 2.0, 1.0], 2, &[1.0, 1.0]).is_none());
        assert!(solve_spd(&[0.0], 1, &[1.0]).is_none());
    }

    #[test]
    fn random_spd_round_trip() {
        let mut rng = crate::rng::seeded(17);
        for _ in 0..20 {
            let n = 5;
            // Build A = M^T M + I (always SPD), pick x, solve for A x.
            let m: Vec<f64> = (0..n * n).map(|_| crate::rng::uniform(&mut rng, -1.0, 1.0)).collect();
            let mut a = vec![0.0f64; n * n];
            for i in 0..n {
                for j in 0..n {
                    let mut s = if i == j { 1.0 } else { 0.0 };
                    for k in 0..n {
                        s += m[k * n + i] * m[k * n + j];
                    }
                    a[i * n + j] = s;
                }
            }
            let x_true: Vec<f64> = (0..n).map(|_| crate::rng::uniform(&mut rng, -2.0, 2.0)).collect();
            let b: Vec<f64> = (0..n)
                .map(|i| (0..n).map(|j| a[i * n + j] * x_true[j]).sum())
                .collect();
            let x = solve_spd(&a, n, &b).unwrap();
            for i in 0..n {
                assert!(math::abs(x[i] - x_true[i]) < 1e-9, "{} vs {}", x[i], x_true[i]);
            }
        }
    }
}
