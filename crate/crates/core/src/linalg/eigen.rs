use crate::error::{Error, Result};
use crate::linalg::{Matrix, ToleranceConfig};
use crate::Real;

/// Cyclic sweeps allowed before giving up.
pub const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a real symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymEigen<T> {
    /// Descending.
    pub values: Vec<T>,
    /// Column `i` is the unit eigenvector for `values[i]`.
    pub vectors: Matrix<T>,
    pub sweeps: usize,
}

impl<T: Real> SymEigen<T> {
    pub fn vector(&self, i: usize) -> Vec<T> {
        self.vectors.col(i)
    }
}

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Inputs whose relative asymmetry `||S - S^T||_F / ||S||_F` is within `1e-12` are
/// symmetrized; anything larger is rejected. Eigenvalues come back in descending order,
/// ties kept in the column order the iteration produced them.
pub fn sym_eigendecompose<T: Real>(s: &Matrix<T>, tol: &ToleranceConfig<T>) -> Result<SymEigen<T>> {
    if !s.is_square() {
        return Err(Error::DimensionMismatch {
            expected: s.rows(),
            found: s.cols(),
        });
    }
    if !s.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = s.rows();
    let scale = s.frobenius_norm();
    let asym = s.asymmetry();
    if asym > T::floor_eps(1e-12, 8.0) * scale {
        return Err(Error::NonSymmetricInput {
            asymmetry: (asym / scale.max(T::min_positive_value())).as_f64(),
        });
    }

    let mut a = s.clone();
    for i in 0..n {
        for j in (i + 1)..n {
            let m = (a[(i, j)] + a[(j, i)]) * T::lit(0.5);
            a[(i, j)] = m;
            a[(j, i)] = m;
        }
    }
    let mut v = Matrix::identity(n);
    let threshold = tol.eig_convergence * scale;

    let mut sweeps = 0;
    loop {
        if off_diagonal_norm(&a) <= threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                if a[(p, q)] != T::zero() {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable: equal eigenvalues keep their column order
    order.sort_by(|&i, &j| {
        a[(j, j)]
            .partial_cmp(&a[(i, i)])
            .expect("finite eigenvalues")
    });
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_col(dst, &v.col(src));
    }
    Ok(SymEigen {
        values,
        vectors,
        sweeps,
    })
}

fn off_diagonal_norm<T: Real>(a: &Matrix<T>) -> T {
    let n = a.rows();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// One Jacobi rotation annihilating `a[p][q]`.
fn rotate<T: Real>(a: &mut Matrix<T>, v: &mut Matrix<T>, p: usize, q: usize) {
    let n = a.rows();
    let apq = a[(p, q)];
    let theta = (a[(q, q)] - a[(p, p)]) / (T::lit(2.0) * apq);
    let t = if theta.abs() > T::lit(1e150).min(T::max_value().sqrt()) {
        T::one() / (T::lit(2.0) * theta)
    } else {
        theta.signum() / (theta.abs() + theta.hypot(T::one()))
    };
    let c = T::one() / t.hypot(T::one());
    let s = t * c;

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
    a[(p, q)] = T::zero();
    a[(q, p)] = T::zero();

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}
