//! Flows of Killing fields and least-squares recovery of an ambient field `(R, v)` from
//! vector samples on a hypersurface.

use crate::error::{Error, Result};
use crate::killing::{CanonicalCoords, CanonicalFrame, EuclideanKillingField};
use crate::linalg::{solve_least_squares, vector, Matrix, ToleranceConfig};
use crate::locus::{classify, LocusKind};
use crate::Real;

/// Point/vector pairs sampled from a candidate Killing field.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSampleSet<T> {
    points: Vec<Vec<T>>,
    vectors: Vec<Vec<T>>,
    weights: Option<Vec<T>>,
}

impl<T: Real> FieldSampleSet<T> {
    pub fn new(points: Vec<Vec<T>>, vectors: Vec<Vec<T>>) -> Result<Self> {
        if points.len() != vectors.len() {
            return Err(Error::DimensionMismatch {
                expected: points.len(),
                found: vectors.len(),
            });
        }
        let m = points.first().map_or(0, Vec::len);
        for (p, x) in points.iter().zip(&vectors) {
            for v in [p, x] {
                if v.len() != m {
                    return Err(Error::DimensionMismatch {
                        expected: m,
                        found: v.len(),
                    });
                }
                if !vector::is_finite(v) {
                    return Err(Error::NonFinite);
                }
            }
        }
        Ok(Self {
            points,
            vectors,
            weights: None,
        })
    }

    /// Samples of `field` at the given points.
    pub fn from_field(field: &EuclideanKillingField<T>, points: Vec<Vec<T>>) -> Result<Self> {
        let vectors = points
            .iter()
            .map(|p| field.evaluate(p))
            .collect::<Result<Vec<_>>>()?;
        Self::new(points, vectors)
    }

    pub fn with_weights(mut self, weights: Vec<T>) -> Result<Self> {
        if weights.len() != self.points.len() {
            return Err(Error::DimensionMismatch {
                expected: self.points.len(),
                found: weights.len(),
            });
        }
        if weights.iter().any(|w| !(*w > T::zero()) || !w.is_finite()) {
            return Err(Error::InvalidArgument(
                "weights must be positive and finite".into(),
            ));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }

    pub fn vectors(&self) -> &[Vec<T>] {
        &self.vectors
    }

    pub fn weight(&self, i: usize) -> T {
        self.weights.as_ref().map_or(T::one(), |w| w[i])
    }

    /// Samples whose index satisfies `keep`.
    pub fn subset(&self, keep: impl Fn(usize) -> bool) -> Self {
        let idx: Vec<usize> = (0..self.len()).filter(|&i| keep(i)).collect();
        Self {
            points: idx.iter().map(|&i| self.points[i].clone()).collect(),
            vectors: idx.iter().map(|&i| self.vectors[i].clone()).collect(),
            weights: self
                .weights
                .as_ref()
                .map(|w| idx.iter().map(|&i| w[i]).collect()),
        }
    }

    /// All points shifted by `u`; vectors unchanged.
    pub fn translated(&self, u: &[T]) -> Self {
        Self {
            points: self.points.iter().map(|p| vector::add(p, u)).collect(),
            vectors: self.vectors.clone(),
            weights: self.weights.clone(),
        }
    }
}

/// Flow `psi_t(p)`: each plane rotates by `w_j t`, kernel coordinates advance by `t v_ker`.
pub fn flow<T: Real>(frame: &CanonicalFrame<T>, p: &[T], t: T) -> Result<Vec<T>> {
    let c = frame.coords(p)?;
    let planar = frame
        .frequencies()
        .iter()
        .zip(&c.planar)
        .map(|(w, [x, y])| {
            let (s, co) = (*w * t).sin_cos();
            [co * *x - s * *y, s * *x + co * *y]
        })
        .collect();
    let kernel = c
        .kernel
        .iter()
        .zip(frame.v_ker())
        .map(|(r, v)| *r + t * *v)
        .collect();
    frame.point(&CanonicalCoords { planar, kernel })
}

#[derive(Debug, Clone, PartialEq)]
pub struct KillingFit<T> {
    pub field: EuclideanKillingField<T>,
    /// `sqrt(sum_i w_i ||R p_i + v - xi_i||^2 / sum_i w_i)`
    pub residual_rms: T,
    /// Dimension of the family of equally good fields.
    pub nullity: usize,
}

/// Number of unknowns: strict upper triangle of `R` plus `v`.
pub fn parameter_count(m: usize) -> usize {
    m * (m - 1) / 2 + m
}

/// Index of `R[a][b]`, `a < b`, in row-major strict-upper-triangle order.
#[inline]
fn skew_index(m: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b);
    a * m - a * (a + 1) / 2 + (b - a - 1)
}

/// Best skew `R` and `v` in the weighted least-squares sense.
///
/// Points are centered on their weighted centroid before assembly; the translation is mapped
/// back afterwards so the result is expressed about the original origin.
pub fn fit_ambient_killing<T: Real>(
    samples: &FieldSampleSet<T>,
    tol: &ToleranceConfig<T>,
) -> Result<KillingFit<T>> {
    if samples.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    let m = samples.dim();
    if m == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    let total_w: T = (0..samples.len()).map(|i| samples.weight(i)).sum();
    let mut centroid = vec![T::zero(); m];
    for (i, p) in samples.points().iter().enumerate() {
        vector::axpy(samples.weight(i) / total_w, p, &mut centroid);
    }

    let q = parameter_count(m);
    let offset = m * (m - 1) / 2;
    let rows = samples.len() * m;
    let mut a = Matrix::zeros(rows, q);
    let mut rhs = vec![T::zero(); rows];
    for (i, (p, xi)) in samples.points().iter().zip(samples.vectors()).enumerate() {
        let sw = samples.weight(i).sqrt();
        let pc = vector::sub(p, &centroid);
        for comp in 0..m {
            let row = i * m + comp;
            for b in 0..m {
                if comp < b {
                    a[(row, skew_index(m, comp, b))] = sw * pc[b];
                } else if b < comp {
                    a[(row, skew_index(m, b, comp))] = -sw * pc[b];
                }
            }
            a[(row, offset + comp)] = sw;
            rhs[row] = sw * xi[comp];
        }
    }
    let ls = solve_least_squares(&a, &rhs, tol)?;

    let mut skew = Matrix::zeros(m, m);
    for r in 0..m {
        for c in (r + 1)..m {
            let x = ls.x[skew_index(m, r, c)];
            skew[(r, c)] = x;
            skew[(c, r)] = -x;
        }
    }
    // fitted about the centroid: X(p) = R (p - g) + v'  =>  v = v' - R g
    let rg = skew.mul_vec(&centroid)?;
    let translation = vector::sub(&ls.x[offset..], &rg);
    Ok(KillingFit {
        field: EuclideanKillingField::new(skew, translation)?,
        residual_rms: ls.residual_norm / total_w.sqrt(),
        nullity: ls.nullity,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtendabilityReport<T> {
    pub fit: KillingFit<T>,
    pub locus_kind: LocusKind,
    /// `max_i | ||xi_i|| - L |`
    pub max_speed_deviation: T,
    /// `max_i` membership defect of `p_i` in the fitted field's locus at speed `L`; `+inf` when empty.
    pub max_membership_defect: T,
    pub locus_consistency: bool,
}

/// Fits a field and checks that the sample points lie in its constant-length locus.
pub fn extendability_report<T: Real>(
    samples: &FieldSampleSet<T>,
    length: T,
    tol: &ToleranceConfig<T>,
) -> Result<ExtendabilityReport<T>> {
    let fit = fit_ambient_killing(samples, tol)?;
    let frame = fit.field.canonicalize(tol)?;
    let locus = classify(&frame, length, tol)?;
    let max_speed_deviation = samples
        .vectors()
        .iter()
        .map(|x| (vector::norm(x) - length).abs())
        .fold(T::zero(), T::max);
    let mut max_membership_defect = T::zero();
    for p in samples.points() {
        max_membership_defect = max_membership_defect.max(locus.contains(p, tol)?.defect);
    }
    let locus_consistency = max_speed_deviation <= tol.membership_band(length)
        && max_membership_defect <= tol.membership_band(length * length);
    Ok(ExtendabilityReport {
        fit,
        locus_kind: locus.kind(),
        max_speed_deviation,
        max_membership_defect,
        locus_consistency,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubsetConsistency<T> {
    pub even: KillingFit<T>,
    pub odd: KillingFit<T>,
    /// `(||R_1 - R_2||_F + ||v_1 - v_2||) / max(1, ||R_1||_F + ||v_1||)`
    pub discrepancy: T,
    pub agree: bool,
}

/// Fits the even- and odd-indexed samples separately and compares the two fields.
pub fn subset_consistency<T: Real>(
    samples: &FieldSampleSet<T>,
    threshold: T,
    tol: &ToleranceConfig<T>,
) -> Result<SubsetConsistency<T>> {
    let even = fit_ambient_killing(&samples.subset(|i| i % 2 == 0), tol)?;
    let odd = fit_ambient_killing(&samples.subset(|i| i % 2 == 1), tol)?;
    let discrepancy = field_distance(&even.field, &odd.field)?;
    Ok(SubsetConsistency {
        agree: discrepancy <= threshold,
        even,
        odd,
        discrepancy,
    })
}

/// Relative distance between two fields: `(||dR||_F + ||dv||) / max(1, ||R_a||_F + ||v_a||)`.
pub fn field_distance<T: Real>(
    a: &EuclideanKillingField<T>,
    b: &EuclideanKillingField<T>,
) -> Result<T> {
    let dr = a.skew().sub(b.skew())?.frobenius_norm();
    let dv = vector::distance(a.translation(), b.translation());
    let scale = T::one().max(a.skew().frobenius_norm() + vector::norm(a.translation()));
    Ok((dr + dv) / scale)
}
