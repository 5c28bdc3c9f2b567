//! Extrinsic geometry of the compact complex ellipsoid `sum_j w_j^2 |z_j|^2 = r^2`.
//!
//! The (unnormalized) normal is `n(p) = (w_1^2 z_1, ..., w_N^2 z_N)`; its derivative along a
//! tangent vector `t` is `M t` with `M = diag(w_j^2)` on the planes, which gives the closed
//! form `II_raw(t, t) = -sum_j w_j^2 |t_j|^2`. The shape operator uses the unit normal
//! `n / ||n||` and the sign convention `A t = -D_t(n / ||n||)`, so every principal curvature
//! is negative with the outward orientation.

use crate::error::{Error, Result};
use crate::linalg::{sym_eigendecompose, vector, Matrix, ToleranceConfig};
use crate::locus::{ConstantLengthLocus, LocusKind};
use crate::Real;

/// Pointwise shape data at a point of the ellipsoid.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeReport<T> {
    pub point: Vec<T>,
    pub normal_raw: Vec<T>,
    pub normal_unit: Vec<T>,
    /// Orthonormal basis of the tangent space, `2N - 1` ambient vectors.
    pub tangent_basis: Vec<Vec<T>>,
    /// Shape operator in `tangent_basis`.
    pub shape_matrix: Matrix<T>,
    /// Descending.
    pub principal_curvatures: Vec<T>,
    pub rank: usize,
    /// `sum_j w_j^4 |z_j|^2`
    pub axixi_paper: T,
    /// `II(xi, xi)` with the unit normal, `xi = X(p)`.
    pub axixi_unit: T,
}

impl<T: Real> ShapeReport<T> {
    /// Same report for the opposite normal orientation.
    pub fn flipped(&self) -> Self {
        let neg = |v: &[T]| v.iter().map(|x| -*x).collect::<Vec<T>>();
        let mut principal_curvatures = neg(&self.principal_curvatures);
        principal_curvatures.reverse();
        Self {
            point: self.point.clone(),
            normal_raw: neg(&self.normal_raw),
            normal_unit: neg(&self.normal_unit),
            tangent_basis: self.tangent_basis.clone(),
            shape_matrix: self.shape_matrix.scale(-T::one()),
            principal_curvatures,
            rank: self.rank,
            axixi_paper: -self.axixi_paper,
            axixi_unit: -self.axixi_unit,
        }
    }
}

fn require_compact<T: Real>(locus: &ConstantLengthLocus<T>) -> Result<()> {
    match locus.kind() {
        LocusKind::Empty => Err(Error::EmptyLocus),
        _ if !locus.is_compact() => Err(Error::NonCompactLocus {
            kernel_dim: locus.kernel_dim(),
        }),
        _ => Ok(()),
    }
}

fn require_on_locus<T: Real>(
    locus: &ConstantLengthLocus<T>,
    p: &[T],
    tol: &ToleranceConfig<T>,
) -> Result<()> {
    require_compact(locus)?;
    let m = locus.contains(p, tol)?;
    if !m.inside {
        let l2 = locus.length() * locus.length();
        return Err(Error::PointOffLocus {
            defect: m.defect.as_f64(),
            tolerance: tol.membership_band(l2).as_f64(),
        });
    }
    Ok(())
}

/// `M v = sum_j w_j^2 (<v, e_j> e_j + <v, f_j> f_j)`: the derivative of the raw normal.
fn normal_derivative<T: Real>(locus: &ConstantLengthLocus<T>, v: &[T]) -> Vec<T> {
    let frame = locus.frame();
    let mut out = vec![T::zero(); frame.ambient_dim()];
    for (w, pl) in frame.frequencies().iter().zip(frame.planes()) {
        let w2 = *w * *w;
        vector::axpy(w2 * vector::dot(v, &pl.e), &pl.e, &mut out);
        vector::axpy(w2 * vector::dot(v, &pl.f), &pl.f, &mut out);
    }
    out
}

fn raw_normal<T: Real>(locus: &ConstantLengthLocus<T>, p: &[T]) -> Vec<T> {
    normal_derivative(locus, &vector::sub(p, locus.frame().center()))
}

/// Raw and unit normal at a locus point.
pub fn normal<T: Real>(
    locus: &ConstantLengthLocus<T>,
    p: &[T],
    tol: &ToleranceConfig<T>,
) -> Result<(Vec<T>, Vec<T>)> {
    require_on_locus(locus, p, tol)?;
    let n = raw_normal(locus, p);
    let len = vector::norm(&n);
    let unit = vector::scaled(&n, T::one() / len);
    Ok((n, unit))
}

/// Orthonormal tangent basis: the standard basis orthonormalized against `normal_unit` by
/// modified Gram–Schmidt, skipping the coordinate axis most aligned with the normal.
pub fn tangent_basis<T: Real>(normal_unit: &[T]) -> Vec<Vec<T>> {
    let m = normal_unit.len();
    let mut skip = 0;
    for i in 1..m {
        if normal_unit[i].abs() > normal_unit[skip].abs() {
            skip = i;
        }
    }
    let mut ortho = vec![normal_unit.to_vec()];
    for i in (0..m).filter(|&i| i != skip) {
        let r = crate::linalg::orthogonalize_against(&vector::unit(m, i), &ortho);
        let n = vector::norm(&r);
        ortho.push(vector::scaled(&r, T::one() / n));
    }
    ortho.remove(0);
    ortho
}

/// Second fundamental form on a tangent vector `t`: `(-sum_j w_j^2 |t_j|^2, same / ||n(p)||)`.
pub fn second_fundamental_form<T: Real>(
    locus: &ConstantLengthLocus<T>,
    p: &[T],
    t: &[T],
    tol: &ToleranceConfig<T>,
) -> Result<(T, T)> {
    let (n_raw, _) = normal(locus, p, tol)?;
    if t.len() != n_raw.len() {
        return Err(Error::DimensionMismatch {
            expected: n_raw.len(),
            found: t.len(),
        });
    }
    let n_len = vector::norm(&n_raw);
    let along = vector::dot(t, &n_raw);
    if along.abs() > T::floor_eps(1e-9, 64.0) * vector::norm(t) * n_len {
        return Err(Error::NonTangentVector {
            normal_component: (along / n_len).as_f64(),
        });
    }
    let ii_raw = closed_form_ii(locus, t);
    Ok((ii_raw, ii_raw / n_len))
}

fn closed_form_ii<T: Real>(locus: &ConstantLengthLocus<T>, t: &[T]) -> T {
    let frame = locus.frame();
    -frame
        .frequencies()
        .iter()
        .zip(frame.planes())
        .map(|(w, pl)| {
            let a = vector::dot(t, &pl.e);
            let b = vector::dot(t, &pl.f);
            *w * *w * (a * a + b * b)
        })
        .sum::<T>()
}

/// Full shape report at a locus point.
pub fn shape_operator<T: Real>(
    locus: &ConstantLengthLocus<T>,
    p: &[T],
    tol: &ToleranceConfig<T>,
) -> Result<ShapeReport<T>> {
    let (normal_raw, normal_unit) = normal(locus, p, tol)?;
    let n_len = vector::norm(&normal_raw);
    let basis = tangent_basis(&normal_unit);
    let d = basis.len();

    let m_basis: Vec<Vec<T>> = basis.iter().map(|t| normal_derivative(locus, t)).collect();
    let mut shape_matrix = Matrix::zeros(d, d);
    for a in 0..d {
        for b in a..d {
            let v = -vector::dot(&basis[a], &m_basis[b]) / n_len;
            shape_matrix[(a, b)] = v;
            shape_matrix[(b, a)] = v;
        }
    }
    let eig = sym_eigendecompose(&shape_matrix, tol)?;
    let largest = eig.values.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let rank = eig
        .values
        .iter()
        .filter(|v| v.abs() > tol.rank_tol * largest)
        .count();

    let (axixi_paper, axixi_unit) = axixi_unchecked(locus, p, n_len);
    Ok(ShapeReport {
        point: p.to_vec(),
        normal_raw,
        normal_unit,
        tangent_basis: basis,
        shape_matrix,
        principal_curvatures: eig.values,
        rank,
        axixi_paper,
        axixi_unit,
    })
}

fn axixi_unchecked<T: Real>(locus: &ConstantLengthLocus<T>, p: &[T], n_len: T) -> (T, T) {
    let frame = locus.frame();
    let c = frame.coords(p).expect("dimension checked");
    let unnormalized: T = frame
        .frequencies()
        .iter()
        .zip(c.moduli_squared())
        .map(|(w, z2)| {
            let w2 = *w * *w;
            w2 * w2 * z2
        })
        .sum();
    let xi = frame.velocity(p).expect("dimension checked");
    (unnormalized, closed_form_ii(locus, &xi) / n_len)
}

/// `(sum_j w_j^4 |z_j|^2, g(A xi, xi))` at a locus point.
pub fn axixi<T: Real>(
    locus: &ConstantLengthLocus<T>,
    p: &[T],
    tol: &ToleranceConfig<T>,
) -> Result<(T, T)> {
    let (n_raw, _) = normal(locus, p, tol)?;
    Ok(axixi_unchecked(locus, p, vector::norm(&n_raw)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundnessReport<T> {
    pub is_round: bool,
    /// `max_j w_j^2 - min_j w_j^2`
    pub omega_spread: T,
    /// Sampled `max - min` of `axixi_paper`.
    pub axixi_spread: T,
    pub axixi_min: T,
    pub axixi_max: T,
    pub axixi_std: T,
    /// Sampled `max - min` of `axixi_unit`.
    pub axixi_unit_spread: T,
    pub samples: usize,
}

/// Decides roundness from the frequencies (`omega_spread <= tol * max w^2`) and reports how
/// much `axixi` varies over `n_samples` seeded samples.
pub fn roundness_test<T: Real>(
    locus: &ConstantLengthLocus<T>,
    n_samples: usize,
    seed: u64,
    tol: T,
) -> Result<RoundnessReport<T>> {
    require_compact(locus)?;
    let w2: Vec<T> = locus
        .frame()
        .frequencies()
        .iter()
        .map(|w| *w * *w)
        .collect();
    let w2_max = w2.iter().fold(T::neg_infinity(), |m, v| m.max(*v));
    let w2_min = w2.iter().fold(T::infinity(), |m, v| m.min(*v));
    let omega_spread = w2_max - w2_min;

    let mut unnormalized = Vec::with_capacity(n_samples);
    let mut unit = Vec::with_capacity(n_samples);
    for p in locus.sample(n_samples, seed, T::one())? {
        let n_len = vector::norm(&raw_normal(locus, &p));
        let (a, b) = axixi_unchecked(locus, &p, n_len);
        unnormalized.push(a);
        unit.push(b);
    }
    let spread = |v: &[T]| {
        let hi = v.iter().fold(T::neg_infinity(), |m, x| m.max(*x));
        let lo = v.iter().fold(T::infinity(), |m, x| m.min(*x));
        (lo, hi)
    };
    let (axixi_min, axixi_max) = spread(&unnormalized);
    let (umin, umax) = spread(&unit);
    let axixi_std = sample_std(&unnormalized);
    let nonempty = n_samples > 0;
    Ok(RoundnessReport {
        is_round: omega_spread <= tol * w2_max,
        omega_spread,
        axixi_spread: if nonempty {
            axixi_max - axixi_min
        } else {
            T::zero()
        },
        axixi_min,
        axixi_max,
        axixi_std,
        axixi_unit_spread: if nonempty { umax - umin } else { T::zero() },
        samples: n_samples,
    })
}

fn sample_std<T: Real>(v: &[T]) -> T {
    if v.len() < 2 {
        return T::zero();
    }
    let n = T::from_usize_lossy(v.len());
    let mean = v.iter().copied().sum::<T>() / n;
    let ss: T = v.iter().map(|x| (*x - mean) * (*x - mean)).sum();
    (ss / (n - T::one())).sqrt()
}
