//! Dense real linear algebra: row-major matrices, cyclic Jacobi for symmetric
//! eigenproblems and one-sided Jacobi SVD for least squares.

mod eigen;
mod lstsq;
mod matrix;
mod tolerance;
pub mod vector;

pub use eigen::{sym_eigendecompose, SymEigen, MAX_SWEEPS};
pub use lstsq::{solve_least_squares, LeastSquares};
pub use matrix::Matrix;
pub use tolerance::ToleranceConfig;

use crate::Real;

/// Modified Gram–Schmidt of `v` against an orthonormal set; returns the residual (not normalized).
pub fn orthogonalize_against<T: Real>(v: &[T], basis: &[Vec<T>]) -> Vec<T> {
    let mut r = v.to_vec();
    // two passes keep the result orthogonal to working precision
    for _ in 0..2 {
        for b in basis {
            let c = vector::dot(&r, b);
            vector::axpy(-c, b, &mut r);
        }
    }
    r
}

/// Orthonormalizes `vectors` in order by modified Gram–Schmidt, dropping any whose residual
/// norm falls below `drop_below` times its original norm.
pub fn orthonormalize<T: Real>(vectors: &[Vec<T>], drop_below: T) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let n0 = vector::norm(v);
        if n0 == T::zero() {
            continue;
        }
        let r = orthogonalize_against(v, &out);
        let n = vector::norm(&r);
        if n > drop_below * n0 {
            out.push(vector::scaled(&r, T::one() / n));
        }
    }
    out
}
