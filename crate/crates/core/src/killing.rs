//! Euclidean Killing fields `X(p) = R p + v` and their canonical frames.
//!
//! A canonical frame splits the ambient space into `N` oriented `R`-invariant planes
//! `(e_j, f_j)` with `R e_j = w_j f_j`, `R f_j = -w_j e_j`, plus the kernel of `R`. In the
//! centered complex coordinates `z_j = <p - c, e_j> + i <p - c, f_j>` the field reads
//! `(i w_1 z_1, ..., i w_N z_N, v_ker)`.

use crate::error::{Error, Result};
use crate::linalg::{self, sym_eigendecompose, vector, Matrix, ToleranceConfig};
use crate::Real;

/// Pair `(R, v)` with `R` skew-symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct EuclideanKillingField<T> {
    skew: Matrix<T>,
    translation: Vec<T>,
}

impl<T: Real> EuclideanKillingField<T> {
    /// Validates shape, finiteness and `||R + R^T||_F <= 1e-12 max(1, ||R||_F)`.
    pub fn new(skew: Matrix<T>, translation: Vec<T>) -> Result<Self> {
        if !skew.is_square() {
            return Err(Error::DimensionMismatch {
                expected: skew.rows(),
                found: skew.cols(),
            });
        }
        if translation.len() != skew.rows() {
            return Err(Error::DimensionMismatch {
                expected: skew.rows(),
                found: translation.len(),
            });
        }
        if !skew.is_finite() || !vector::is_finite(&translation) {
            return Err(Error::NonFinite);
        }
        let defect = skew.skew_defect();
        if defect > Self::skew_tolerance() * T::one().max(skew.frobenius_norm()) {
            return Err(Error::NotSkewSymmetric {
                defect: defect.as_f64(),
            });
        }
        Ok(Self { skew, translation })
    }

    pub fn translation_only(translation: Vec<T>) -> Self {
        let m = translation.len();
        Self {
            skew: Matrix::zeros(m, m),
            translation,
        }
    }

    fn skew_tolerance() -> T {
        T::floor_eps(1e-12, 8.0)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn skew(&self) -> &Matrix<T> {
        &self.skew
    }

    pub fn translation(&self) -> &[T] {
        &self.translation
    }

    /// `R p + v`
    pub fn evaluate(&self, p: &[T]) -> Result<Vec<T>> {
        let mut x = self.skew.mul_vec(p)?;
        vector::axpy(T::one(), &self.translation, &mut x);
        Ok(x)
    }

    /// The same field written about a new origin: points `p' = p - u` see `(R, v + R u)`.
    pub fn recentered(&self, shift: &[T]) -> Result<Self> {
        let ru = self.skew.mul_vec(shift)?;
        Ok(Self {
            skew: self.skew.clone(),
            translation: vector::add(&self.translation, &ru),
        })
    }

    /// Conjugation by an orthogonal change of basis: `(Q R Q^T, Q v)`.
    pub fn conjugated(&self, q: &Matrix<T>) -> Result<Self> {
        let skew = q.matmul(&self.skew)?.matmul(&q.transpose())?;
        let translation = q.mul_vec(&self.translation)?;
        Ok(Self { skew, translation })
    }

    /// Canonical frame of the field.
    ///
    /// Eigenvalues of `-R^2 = R^T R` above `zero_freq_rel * lambda_max` are grouped into
    /// eigenspaces; each eigenspace of dimension `2d` is split into `d` invariant planes by
    /// taking a unit vector `u`, its partner `R u / ||R u||`, and deflating.
    pub fn canonicalize(&self, tol: &ToleranceConfig<T>) -> Result<CanonicalFrame<T>> {
        let m = self.dim();
        let r = &self.skew;
        let s = r.transpose().matmul(r)?;
        let eig = sym_eigendecompose(&s, tol)?;

        let lambda_max = eig.values.first().copied().unwrap_or(T::zero());
        let cutoff = tol.zero_freq_rel * lambda_max;
        let nonzero = if lambda_max > T::zero() {
            eig.values.iter().take_while(|&&l| l > cutoff).count()
        } else {
            0
        };

        // consecutive eigenvalues closer than this belong to one eigenspace
        let gap = T::epsilon().sqrt() * lambda_max;
        let mut clusters: Vec<Vec<Vec<T>>> = Vec::new();
        for i in 0..nonzero {
            let starts_new = i == 0 || eig.values[i - 1] - eig.values[i] > gap;
            if starts_new {
                clusters.push(Vec::new());
            }
            clusters
                .last_mut()
                .expect("cluster opened")
                .push(eig.vector(i));
        }

        let mut accepted: Vec<Vec<T>> = Vec::with_capacity(m);
        let mut planes: Vec<(T, InvariantPlane<T>)> = Vec::new();
        let mut leftovers: Vec<Vec<T>> = Vec::new();
        for cluster in clusters {
            let mut remaining = cluster;
            while remaining.len() >= 2 {
                let u0 = linalg::orthogonalize_against(&remaining[0], &accepted);
                let u = vector::scaled(&u0, T::one() / vector::norm(&u0));
                let ru = r.mul_vec(&u)?;
                let omega = vector::norm(&ru);
                if omega == T::zero() {
                    break;
                }
                accepted.push(u.clone());
                let f0 = linalg::orthogonalize_against(&ru, &accepted);
                let f = vector::scaled(&f0, T::one() / vector::norm(&f0));
                accepted.push(f.clone());
                planes.push((omega, InvariantPlane { e: u, f }));

                // one of the remaining vectors now lies (numerically) in span{u, f}
                let mut rest: Vec<(T, Vec<T>)> = remaining[1..]
                    .iter()
                    .map(|w| {
                        let res = linalg::orthogonalize_against(w, &accepted);
                        (vector::norm(&res), res)
                    })
                    .collect();
                let weakest = rest
                    .iter()
                    .enumerate()
                    .min_by(|a, b| a.1 .0.partial_cmp(&b.1 .0).expect("finite norms"))
                    .map(|(i, _)| i)
                    .expect("at least one remaining vector");
                rest.remove(weakest);
                let rest: Vec<Vec<T>> = rest.into_iter().map(|(_, v)| v).collect();
                remaining = linalg::orthonormalize(&rest, T::lit(1e-6));
            }
            leftovers.extend(remaining);
        }
        // stable: keeps eigenspace order for ties
        planes.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite frequencies"));

        let mut kernel_candidates = leftovers;
        kernel_candidates.extend((nonzero..m).map(|i| eig.vector(i)));
        let mut kernel_basis = Vec::with_capacity(kernel_candidates.len());
        for w in kernel_candidates {
            let mut basis_so_far = accepted.clone();
            basis_so_far.extend(kernel_basis.iter().cloned());
            let res = linalg::orthogonalize_against(&w, &basis_so_far);
            let n = vector::norm(&res);
            if n > T::lit(0.5) {
                kernel_basis.push(vector::scaled(&res, T::one() / n));
            }
        }

        let (frequencies, planes): (Vec<T>, Vec<InvariantPlane<T>>) = planes.into_iter().unzip();
        Ok(CanonicalFrame::derive(
            m,
            frequencies,
            planes,
            kernel_basis,
            &self.translation,
        ))
    }
}

/// Oriented orthonormal pair spanning an `R`-invariant plane.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantPlane<T> {
    pub e: Vec<T>,
    pub f: Vec<T>,
}

/// Point expressed in centered canonical coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalCoords<T> {
    /// `z_j` as `[Re, Im]`.
    pub planar: Vec<[T; 2]>,
    pub kernel: Vec<T>,
}

impl<T: Real> CanonicalCoords<T> {
    /// `|z_j|^2` for each plane.
    pub fn moduli_squared(&self) -> Vec<T> {
        self.planar.iter().map(|[x, y]| *x * *x + *y * *y).collect()
    }
}

/// Adapted orthonormal frame of a Killing field.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalFrame<T> {
    ambient_dim: usize,
    frequencies: Vec<T>,
    planes: Vec<InvariantPlane<T>>,
    kernel_basis: Vec<Vec<T>>,
    center: Vec<T>,
    v_ker: Vec<T>,
}

impl<T: Real> CanonicalFrame<T> {
    /// Fills in center and kernel translation from the field's translation vector.
    fn derive(
        ambient_dim: usize,
        frequencies: Vec<T>,
        planes: Vec<InvariantPlane<T>>,
        kernel_basis: Vec<Vec<T>>,
        translation: &[T],
    ) -> Self {
        // R c = -v_im with c in the image: c = sum_j (-<v,f_j> e_j + <v,e_j> f_j) / w_j
        let mut center = vec![T::zero(); ambient_dim];
        for (w, pl) in frequencies.iter().zip(&planes) {
            let ve = vector::dot(translation, &pl.e);
            let vf = vector::dot(translation, &pl.f);
            vector::axpy(-vf / *w, &pl.e, &mut center);
            vector::axpy(ve / *w, &pl.f, &mut center);
        }
        let v_ker = kernel_basis
            .iter()
            .map(|k| vector::dot(translation, k))
            .collect();
        Self {
            ambient_dim,
            frequencies,
            planes,
            kernel_basis,
            center,
            v_ker,
        }
    }

    /// Frame with planes on consecutive coordinate pairs `(0,1), (2,3), ...`, kernel on the
    /// trailing coordinates and center at the origin.
    pub fn standard(frequencies: Vec<T>, kernel_dim: usize, v_ker: Vec<T>) -> Result<Self> {
        if v_ker.len() != kernel_dim {
            return Err(Error::DimensionMismatch {
                expected: kernel_dim,
                found: v_ker.len(),
            });
        }
        let n = frequencies.len();
        let m = 2 * n + kernel_dim;
        let planes = (0..n)
            .map(|j| InvariantPlane {
                e: vector::unit(m, 2 * j),
                f: vector::unit(m, 2 * j + 1),
            })
            .collect();
        let kernel_basis = (0..kernel_dim)
            .map(|i| vector::unit(m, 2 * n + i))
            .collect();
        Self::from_parts(frequencies, planes, kernel_basis, vec![T::zero(); m], v_ker)
    }

    /// Assembles a frame from explicit parts, checking every frame invariant except the
    /// descending order, which is restored by sorting.
    pub fn from_parts(
        frequencies: Vec<T>,
        planes: Vec<InvariantPlane<T>>,
        kernel_basis: Vec<Vec<T>>,
        center: Vec<T>,
        v_ker: Vec<T>,
    ) -> Result<Self> {
        let m = center.len();
        if planes.len() != frequencies.len() {
            return Err(Error::DimensionMismatch {
                expected: frequencies.len(),
                found: planes.len(),
            });
        }
        if 2 * planes.len() + kernel_basis.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: 2 * planes.len() + kernel_basis.len(),
            });
        }
        if v_ker.len() != kernel_basis.len() {
            return Err(Error::DimensionMismatch {
                expected: kernel_basis.len(),
                found: v_ker.len(),
            });
        }
        if frequencies
            .iter()
            .any(|w| !(*w > T::zero()) || !w.is_finite())
            || !vector::is_finite(&center)
            || !vector::is_finite(&v_ker)
        {
            return Err(Error::NonFinite);
        }
        let mut order: Vec<usize> = (0..frequencies.len()).collect();
        order.sort_by(|&a, &b| frequencies[b].partial_cmp(&frequencies[a]).expect("finite"));
        let frame = Self {
            ambient_dim: m,
            frequencies: order.iter().map(|&i| frequencies[i]).collect(),
            planes: order.iter().map(|&i| planes[i].clone()).collect(),
            kernel_basis,
            center,
            v_ker,
        };
        let gram = frame
            .basis_matrix()
            .transpose()
            .matmul(&frame.basis_matrix())?;
        let err = gram.sub(&Matrix::identity(m))?.frobenius_norm();
        if err > T::floor_eps(1e-11, 64.0) {
            return Err(Error::InvalidTolerance(format!(
                "frame vectors are not orthonormal (Gram defect {err:e})"
            )));
        }
        Ok(frame)
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// `N`
    #[inline]
    pub fn rotation_count(&self) -> usize {
        self.frequencies.len()
    }

    /// `k = m - 2N`
    #[inline]
    pub fn kernel_dim(&self) -> usize {
        self.kernel_basis.len()
    }

    pub fn frequencies(&self) -> &[T] {
        &self.frequencies
    }

    pub fn planes(&self) -> &[InvariantPlane<T>] {
        &self.planes
    }

    pub fn kernel_basis(&self) -> &[Vec<T>] {
        &self.kernel_basis
    }

    pub fn center(&self) -> &[T] {
        &self.center
    }

    pub fn v_ker(&self) -> &[T] {
        &self.v_ker
    }

    pub fn v_ker_norm(&self) -> T {
        vector::norm(&self.v_ker)
    }

    /// Columns `e_1, f_1, ..., e_N, f_N, kernel...`: an orthogonal matrix.
    pub fn basis_matrix(&self) -> Matrix<T> {
        let mut cols = Vec::with_capacity(self.ambient_dim);
        for pl in &self.planes {
            cols.push(pl.e.clone());
            cols.push(pl.f.clone());
        }
        cols.extend(self.kernel_basis.iter().cloned());
        Matrix::from_columns(&cols, self.ambient_dim)
    }

    fn check_dim(&self, p: &[T]) -> Result<()> {
        if p.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: p.len(),
            });
        }
        Ok(())
    }

    pub fn coords(&self, p: &[T]) -> Result<CanonicalCoords<T>> {
        self.check_dim(p)?;
        let q = vector::sub(p, &self.center);
        Ok(self.coords_of_offset(&q))
    }

    fn coords_of_offset(&self, q: &[T]) -> CanonicalCoords<T> {
        CanonicalCoords {
            planar: self
                .planes
                .iter()
                .map(|pl| [vector::dot(q, &pl.e), vector::dot(q, &pl.f)])
                .collect(),
            kernel: self
                .kernel_basis
                .iter()
                .map(|k| vector::dot(q, k))
                .collect(),
        }
    }

    /// Inverse of [`coords`](Self::coords).
    pub fn point(&self, coords: &CanonicalCoords<T>) -> Result<Vec<T>> {
        if coords.planar.len() != self.rotation_count() {
            return Err(Error::DimensionMismatch {
                expected: self.rotation_count(),
                found: coords.planar.len(),
            });
        }
        if coords.kernel.len() != self.kernel_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.kernel_dim(),
                found: coords.kernel.len(),
            });
        }
        let mut p = self.center.clone();
        for (pl, [x, y]) in self.planes.iter().zip(&coords.planar) {
            vector::axpy(*x, &pl.e, &mut p);
            vector::axpy(*y, &pl.f, &mut p);
        }
        for (k, r) in self.kernel_basis.iter().zip(&coords.kernel) {
            vector::axpy(*r, k, &mut p);
        }
        Ok(p)
    }

    /// The field `(R, v)` this frame describes.
    pub fn reconstruct(&self) -> EuclideanKillingField<T> {
        let m = self.ambient_dim;
        let mut skew = Matrix::zeros(m, m);
        for (w, pl) in self.frequencies.iter().zip(&self.planes) {
            skew.add_scaled(*w, &Matrix::outer(&pl.f, &pl.e));
            skew.add_scaled(-*w, &Matrix::outer(&pl.e, &pl.f));
        }
        let mut translation = skew.mul_vec(&self.center).expect("square");
        translation.iter_mut().for_each(|x| *x = -*x);
        for (k, vk) in self.kernel_basis.iter().zip(&self.v_ker) {
            vector::axpy(*vk, k, &mut translation);
        }
        EuclideanKillingField { skew, translation }
    }

    /// `X(p)` computed in the frame: plane components `i w_j z_j`, kernel component `v_ker`.
    pub fn velocity(&self, p: &[T]) -> Result<Vec<T>> {
        let c = self.coords(p)?;
        let mut x = vec![T::zero(); self.ambient_dim];
        for ((w, pl), [a, b]) in self.frequencies.iter().zip(&self.planes).zip(&c.planar) {
            vector::axpy(-*w * *b, &pl.e, &mut x);
            vector::axpy(*w * *a, &pl.f, &mut x);
        }
        for (k, vk) in self.kernel_basis.iter().zip(&self.v_ker) {
            vector::axpy(*vk, k, &mut x);
        }
        Ok(x)
    }

    /// `||X(p)||^2 = sum_j w_j^2 |z_j|^2 + ||v_ker||^2`
    pub fn speed_squared(&self, p: &[T]) -> Result<T> {
        let c = self.coords(p)?;
        let rot: T = self
            .frequencies
            .iter()
            .zip(c.moduli_squared())
            .map(|(w, z2)| *w * *w * z2)
            .sum();
        Ok(rot + vector::norm_squared(&self.v_ker))
    }

    /// Gradient of [`speed_squared`](Self::speed_squared): `2 w_j^2 z_j` in each plane, zero
    /// along the kernel.
    pub fn speed_gradient(&self, p: &[T]) -> Result<Vec<T>> {
        let c = self.coords(p)?;
        let mut g = vec![T::zero(); self.ambient_dim];
        let two = T::lit(2.0);
        for ((w, pl), [a, b]) in self.frequencies.iter().zip(&self.planes).zip(&c.planar) {
            let w2 = two * *w * *w;
            vector::axpy(w2 * *a, &pl.e, &mut g);
            vector::axpy(w2 * *b, &pl.f, &mut g);
        }
        Ok(g)
    }

    /// Orthogonal projector onto the sum of the planes whose frequency lies within
    /// `rel * w` of `w`.
    pub fn frequency_projector(&self, omega: T, rel: T) -> Matrix<T> {
        let m = self.ambient_dim;
        let mut p = Matrix::zeros(m, m);
        for (w, pl) in self.frequencies.iter().zip(&self.planes) {
            if (*w - omega).abs() <= rel * omega {
                p.add_scaled(T::one(), &Matrix::outer(&pl.e, &pl.e));
                p.add_scaled(T::one(), &Matrix::outer(&pl.f, &pl.f));
            }
        }
        p
    }

    /// Orthogonal projector onto `ker R`.
    pub fn kernel_projector(&self) -> Matrix<T> {
        let m = self.ambient_dim;
        let mut p = Matrix::zeros(m, m);
        for k in &self.kernel_basis {
            p.add_scaled(T::one(), &Matrix::outer(k, k));
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> ToleranceConfig<f64> {
        ToleranceConfig::default()
    }

    fn field(rows: &[Vec<f64>], v: Vec<f64>) -> EuclideanKillingField<f64> {
        EuclideanKillingField::new(Matrix::from_rows(rows).unwrap(), v).unwrap()
    }

    fn close(a: &[f64], b: &[f64], eps: f64) -> bool {
        a.len() == b.len() && vector::distance(a, b) <= eps
    }

    #[test]
    fn evaluate_pure_translation() {
        let x = EuclideanKillingField::translation_only(vec![0.0, 0.0, 1.0]);
        assert_eq!(x.evaluate(&[5.0, -2.0, 7.0]).unwrap(), vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn evaluate_unit_rotation() {
        let x = field(&[vec![0.0, -1.0], vec![1.0, 0.0]], vec![0.0, 0.0]);
        assert_eq!(x.evaluate(&[1.0, 0.0]).unwrap(), vec![0.0, 1.0]);
    }

    #[test]
    fn evaluate_canonical_two_plane_field() {
        // z = (1, i) under w = (1, 3): velocities (i, -3)
        let frame = CanonicalFrame::from_parts(
            vec![1.0, 3.0],
            vec![
                InvariantPlane {
                    e: vector::unit(4, 0),
                    f: vector::unit(4, 1),
                },
                InvariantPlane {
                    e: vector::unit(4, 2),
                    f: vector::unit(4, 3),
                },
            ],
            vec![],
            vec![0.0; 4],
            vec![],
        )
        .unwrap();
        let x = frame.reconstruct();
        let p = [1.0, 0.0, 0.0, 1.0];
        let v = x.evaluate(&p).unwrap();
        assert_eq!(v, vec![0.0, 1.0, -3.0, 0.0]);
        assert_eq!(frame.velocity(&p).unwrap(), v);
    }

    #[test]
    fn evaluate_dimension_mismatch() {
        let x = EuclideanKillingField::translation_only(vec![0.0, 1.0]);
        assert!(matches!(
            x.evaluate(&[1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rejects_non_skew() {
        let r = Matrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(
            EuclideanKillingField::new(r, vec![0.0, 0.0]),
            Err(Error::NotSkewSymmetric { .. })
        ));
        let r = Matrix::from_rows(&[vec![0.0, -1.0], vec![1.0 + 1e-14, 0.0]]).unwrap();
        assert!(EuclideanKillingField::new(r, vec![0.0, 0.0]).is_ok());
    }

    #[test]
    fn canonicalize_single_block() {
        let x = field(&[vec![0.0, -2.0], vec![2.0, 0.0]], vec![0.0, 0.0]);
        let f = x.canonicalize(&tol()).unwrap();
        assert_eq!(f.rotation_count(), 1);
        assert_eq!(f.frequencies(), &[2.0]);
        assert_eq!(f.kernel_dim(), 0);
        assert_eq!(f.center(), &[0.0, 0.0]);
        assert!(f.v_ker().is_empty());
        let back = f.reconstruct();
        assert!(back.skew().sub(x.skew()).unwrap().frobenius_norm() <= 1e-10);
        assert!(close(back.translation(), x.translation(), 1e-10));
    }

    #[test]
    fn canonicalize_no_rotation() {
        let x = EuclideanKillingField::translation_only(vec![0.0, 0.0, 1.0]);
        let f = x.canonicalize(&tol()).unwrap();
        assert_eq!(f.rotation_count(), 0);
        assert_eq!(f.kernel_dim(), 3);
        assert_eq!(f.center(), &[0.0; 3]);
        // kernel basis is the standard basis for R = 0
        assert!(close(f.v_ker(), &[0.0, 0.0, 1.0], 1e-15));
    }

    #[test]
    fn canonicalize_repeated_frequency() {
        let x = CanonicalFrame::standard(vec![1.0, 1.0], 0, vec![])
            .unwrap()
            .reconstruct();
        let f = x.canonicalize(&tol()).unwrap();
        assert_eq!(f.rotation_count(), 2);
        for w in f.frequencies() {
            assert!((w - 1.0).abs() < 1e-14);
        }
        let r = x.skew();
        for (w, pl) in f.frequencies().iter().zip(f.planes()) {
            // R e = w f and R f = -w e by direct multiplication
            let re = r.mul_vec(&pl.e).unwrap();
            let rf = r.mul_vec(&pl.f).unwrap();
            assert!(close(&re, &vector::scaled(&pl.f, *w), 1e-12));
            assert!(close(&rf, &vector::scaled(&pl.e, -*w), 1e-12));
        }
        let (a, b) = (&f.planes()[0], &f.planes()[1]);
        for u in [&a.e, &a.f] {
            for w in [&b.e, &b.f] {
                assert!(vector::dot(u, w).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn center_absorbs_image_translation() {
        // rotation about (1, 2): X(p) = R (p - c)
        let x = field(&[vec![0.0, -1.0], vec![1.0, 0.0]], vec![2.0, -1.0]);
        let f = x.canonicalize(&tol()).unwrap();
        assert!(close(f.center(), &[1.0, 2.0], 1e-14));
        assert!(x
            .evaluate(&[1.0, 2.0])
            .unwrap()
            .iter()
            .all(|c| c.abs() < 1e-14));
    }

    #[test]
    fn reconstruct_translation_frame() {
        let f = CanonicalFrame::standard(vec![], 3, vec![1.0, 0.0, 0.0]).unwrap();
        let x = f.reconstruct();
        assert_eq!(x.skew(), &Matrix::zeros(3, 3));
        assert_eq!(x.translation(), &[1.0, 0.0, 0.0]);
    }

    #[test]
    fn speed_squared_examples() {
        let f = CanonicalFrame::standard(vec![1.0], 0, vec![]).unwrap();
        assert_eq!(f.speed_squared(&[3.0, 4.0]).unwrap(), 25.0);

        let f = CanonicalFrame::standard(vec![], 3, vec![0.0, 0.0, 2.0]).unwrap();
        assert_eq!(f.speed_squared(&[9.0, -1.0, 0.5]).unwrap(), 4.0);

        let f = CanonicalFrame::standard(vec![1.0, 3.0], 0, vec![]).unwrap();
        // |z_1| = |z_2| = 1: 1 + 9
        assert_eq!(f.speed_squared(&[0.0, 1.0, 1.0, 0.0]).unwrap(), 10.0);
    }

    #[test]
    fn speed_gradient_examples() {
        let f = CanonicalFrame::standard(vec![1.0], 0, vec![]).unwrap();
        assert_eq!(f.speed_gradient(&[1.0, 0.0]).unwrap(), vec![2.0, 0.0]);
        let f = CanonicalFrame::standard(vec![], 2, vec![1.0, 1.0]).unwrap();
        assert_eq!(f.speed_gradient(&[3.0, -7.0]).unwrap(), vec![0.0, 0.0]);
        assert!(f.speed_gradient(&[3.0]).is_err());
    }

    #[test]
    fn coords_round_trip() {
        let x = field(
            &[
                vec![0.0, -1.0, 0.5],
                vec![1.0, 0.0, -2.0],
                vec![-0.5, 2.0, 0.0],
            ],
            vec![0.3, -0.2, 1.1],
        );
        let f = x.canonicalize(&tol()).unwrap();
        let p = [0.4, -1.5, 2.25];
        let back = f.point(&f.coords(&p).unwrap()).unwrap();
        assert!(close(&back, &p, 1e-14));
    }

    #[test]
    fn from_parts_rejects_non_orthonormal() {
        let r = CanonicalFrame::from_parts(
            vec![1.0],
            vec![InvariantPlane {
                e: vec![1.0, 0.0],
                f: vec![1.0, 0.0],
            }],
            vec![],
            vec![0.0, 0.0],
            vec![],
        );
        assert!(r.is_err());
        assert!(CanonicalFrame::standard(vec![-1.0], 0, vec![]).is_err());
        assert!(CanonicalFrame::<f64>::standard(vec![], 2, vec![1.0]).is_err());
    }

    #[test]
    fn f32_canonicalize() {
        let r = Matrix::from_rows(&[vec![0.0f32, -2.0], vec![2.0, 0.0]]).unwrap();
        let x = EuclideanKillingField::new(r, vec![0.0, 0.0]).unwrap();
        let f = x.canonicalize(&ToleranceConfig::default()).unwrap();
        assert_eq!(f.rotation_count(), 1);
        assert!((f.frequencies()[0] - 2.0).abs() < 1e-6);
    }
}
