use crate::error::{Error, Result};
use crate::linalg::{vector, Matrix, ToleranceConfig, MAX_SWEEPS};
use crate::Real;

/// Minimum-norm least-squares solution of `A x ~ b`.
#[derive(Debug, Clone, PartialEq)]
pub struct LeastSquares<T> {
    pub x: Vec<T>,
    pub residual_norm: T,
    /// `q - rank(A)`, with rank decided by `rank_tol`.
    pub nullity: usize,
    /// Singular values of `A` in column order (not sorted).
    pub singular_values: Vec<T>,
}

/// Solves `min ||A x - b||` through a one-sided Jacobi SVD of `A`.
///
/// Singular values at or below `rank_tol * sigma_max` are truncated, which yields the
/// minimum-norm minimizer when `A` is rank deficient.
pub fn solve_least_squares<T: Real>(
    a: &Matrix<T>,
    b: &[T],
    tol: &ToleranceConfig<T>,
) -> Result<LeastSquares<T>> {
    let (p, q) = (a.rows(), a.cols());
    if p == 0 || q == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    if b.len() != p {
        return Err(Error::DimensionMismatch {
            expected: p,
            found: b.len(),
        });
    }
    if !a.is_finite() || !vector::is_finite(b) {
        return Err(Error::NonFinite);
    }

    let mut u: Vec<Vec<T>> = (0..q).map(|j| a.col(j)).collect();
    let mut v: Vec<Vec<T>> = (0..q).map(|j| vector::unit(q, j)).collect();
    let negligible = T::epsilon() * a.frobenius_norm();
    let conv = tol.eig_convergence;

    let mut sweeps = 0;
    loop {
        let mut rotated = false;
        for i in 0..q {
            for j in (i + 1)..q {
                let alpha = vector::norm_squared(&u[i]);
                let beta = vector::norm_squared(&u[j]);
                if alpha.sqrt() <= negligible || beta.sqrt() <= negligible {
                    continue;
                }
                let gamma = vector::dot(&u[i], &u[j]);
                if gamma.abs() <= conv * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (T::lit(2.0) * gamma);
                let t = zeta.signum() / (zeta.abs() + zeta.hypot(T::one()));
                let c = T::one() / t.hypot(T::one());
                let s = c * t;
                rotate_pair(&mut u, i, j, c, s);
                rotate_pair(&mut v, i, j, c, s);
            }
        }
        if !rotated {
            break;
        }
        sweeps += 1;
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
    }

    let sigma: Vec<T> = u.iter().map(|c| vector::norm(c)).collect();
    let sigma_max = sigma.iter().fold(T::zero(), |m, &s| m.max(s));
    let cutoff = tol.rank_tol * sigma_max;
    let mut x = vec![T::zero(); q];
    let mut rank = 0;
    for k in 0..q {
        if sigma[k] > cutoff && sigma[k] > T::zero() {
            rank += 1;
            let coef = vector::dot(&u[k], b) / (sigma[k] * sigma[k]);
            vector::axpy(coef, &v[k], &mut x);
        }
    }
    let ax = a.mul_vec(&x)?;
    let residual_norm = vector::distance(&ax, b);
    Ok(LeastSquares {
        x,
        residual_norm,
        nullity: q - rank,
        singular_values: sigma,
    })
}

fn rotate_pair<T: Real>(cols: &mut [Vec<T>], i: usize, j: usize, c: T, s: T) {
    let (left, right) = cols.split_at_mut(j);
    let (ci, cj) = (&mut left[i], &mut right[0]);
    for (x, y) in ci.iter_mut().zip(cj.iter_mut()) {
        let (xi, yj) = (*x, *y);
        *x = c * xi - s * yj;
        *y = s * xi + c * yj;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tol() -> ToleranceConfig<f64> {
        ToleranceConfig::default()
    }

    #[test]
    fn identity_system() {
        let a = Matrix::identity(2);
        let ls = solve_least_squares(&a, &[3.0, 4.0], &tol()).unwrap();
        assert_eq!(ls.nullity, 0);
        assert!((ls.x[0] - 3.0).abs() < 1e-15 && (ls.x[1] - 4.0).abs() < 1e-15);
        assert!(ls.residual_norm < 1e-15);
    }

    #[test]
    fn minimum_norm_when_rank_deficient() {
        let a = Matrix::from_rows(&[vec![1.0, 0.0], vec![1.0, 0.0]]).unwrap();
        let ls = solve_least_squares(&a, &[1.0, 1.0], &tol()).unwrap();
        assert_eq!(ls.nullity, 1);
        assert!((ls.x[0] - 1.0).abs() < 1e-15 && ls.x[1].abs() < 1e-15);
        assert!(ls.residual_norm < 1e-15);
    }

    #[test]
    fn mean_of_two_observations() {
        let a = Matrix::from_rows(&[vec![1.0], vec![1.0]]).unwrap();
        let ls = solve_least_squares(&a, &[0.0, 2.0], &tol()).unwrap();
        assert!((ls.x[0] - 1.0).abs() < 1e-15);
        assert!((ls.residual_norm - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(ls.nullity, 0);
    }

    #[test]
    fn underdetermined_minimum_norm() {
        // x + y = 2 has minimum-norm solution (1, 1)
        let a = Matrix::from_rows(&[vec![1.0, 1.0]]).unwrap();
        let ls = solve_least_squares(&a, &[2.0], &tol()).unwrap();
        assert_eq!(ls.nullity, 1);
        assert!((ls.x[0] - 1.0).abs() < 1e-14 && (ls.x[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn zero_matrix_gives_zero_solution() {
        let a = Matrix::<f64>::zeros(3, 2);
        let ls = solve_least_squares(&a, &[1.0, 2.0, 2.0], &tol()).unwrap();
        assert_eq!(ls.nullity, 2);
        assert_eq!(ls.x, vec![0.0, 0.0]);
        assert!((ls.residual_norm - 3.0).abs() < 1e-15);
    }

    #[test]
    fn dimension_mismatch() {
        let a = Matrix::<f64>::identity(2);
        assert!(matches!(
            solve_least_squares(&a, &[1.0], &tol()),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(solve_least_squares(&Matrix::<f64>::zeros(0, 2), &[], &tol()).is_err());
    }

    fn system() -> impl Strategy<Value = (Matrix<f64>, Vec<f64>, Vec<Vec<f64>>)> {
        (1usize..=8, 1usize..=6).prop_flat_map(|(p, q)| {
            (
                proptest::collection::vec(-5.0f64..5.0, p * q),
                proptest::collection::vec(-5.0f64..5.0, p),
                proptest::collection::vec(proptest::collection::vec(-1.0f64..1.0, q), 100),
            )
                .prop_map(move |(d, b, dirs)| (Matrix::from_row_major(p, q, d).unwrap(), b, dirs))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn optimal_under_perturbation((a, b, dirs) in system()) {
            let ls = solve_least_squares(&a, &b, &tol()).unwrap();
            for d in dirs {
                let n = vector::norm(&d);
                if n == 0.0 { continue; }
                let x2 = vector::add(&ls.x, &vector::scaled(&d, 1e-3 / n));
                let r2 = vector::distance(&a.mul_vec(&x2).unwrap(), &b);
                prop_assert!(r2 >= ls.residual_norm - 1e-12);
            }
        }

        #[test]
        fn normal_equations_hold((a, b, _dirs) in system()) {
            let ls = solve_least_squares(&a, &b, &tol()).unwrap();
            let r = vector::sub(&a.mul_vec(&ls.x).unwrap(), &b);
            let g = a.tr_mul_vec(&r).unwrap();
            let scale = a.frobenius_norm() * (vector::norm(&b) + 1.0);
            prop_assert!(vector::norm(&g) <= 1e-10 * scale);
        }
    }
}
