//! The constant-length set `H = { p : ||X(p)|| = L }` of a Killing field.
//!
//! In centered canonical coordinates `||X||^2 = sum_j w_j^2 |z_j|^2 + ||v_ker||^2`, so `H` is
//! empty, the affine subspace `{z = 0}`, or the cylinder `E x R^k` over the complex
//! ellipsoid `E = { sum_j w_j^2 |z_j|^2 = L^2 - ||v_ker||^2 }`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::killing::{CanonicalCoords, CanonicalFrame};
use crate::linalg::{vector, ToleranceConfig};
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LocusKind {
    Empty,
    /// `{z = 0} x R^k`; all of `R^m` when `N = 0`.
    Affine,
    /// `E x R^k`.
    EllipsoidCylinder,
}

impl fmt::Display for LocusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LocusKind::Empty => "Empty",
            LocusKind::Affine => "Affine",
            LocusKind::EllipsoidCylinder => "EllipsoidCylinder",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstantLengthLocus<T> {
    kind: LocusKind,
    frame: CanonicalFrame<T>,
    length: T,
    radius_squared: Option<T>,
}

/// Result of a membership query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Membership<T> {
    pub inside: bool,
    /// `| ||X(p)||^2 - L^2 |`, or `+inf` for the empty locus.
    pub defect: T,
}

/// Classifies the constant-length locus of `frame` at speed `length`.
///
/// `length == ||v_ker||` is decided within `membership_tol * max(1, length)`.
pub fn classify<T: Real>(
    frame: &CanonicalFrame<T>,
    length: T,
    tol: &ToleranceConfig<T>,
) -> Result<ConstantLengthLocus<T>> {
    if !(length > T::zero()) || !length.is_finite() {
        return Err(Error::NonPositiveLength {
            length: length.as_f64(),
        });
    }
    let vk = frame.v_ker_norm();
    let (kind, radius_squared) = if (length - vk).abs() <= tol.membership_band(length) {
        (LocusKind::Affine, None)
    } else if length < vk || frame.rotation_count() == 0 {
        (LocusKind::Empty, None)
    } else {
        (
            LocusKind::EllipsoidCylinder,
            Some((length - vk) * (length + vk)),
        )
    };
    Ok(ConstantLengthLocus {
        kind,
        frame: frame.clone(),
        length,
        radius_squared,
    })
}

impl<T: Real> ConstantLengthLocus<T> {
    pub fn kind(&self) -> LocusKind {
        self.kind
    }

    pub fn frame(&self) -> &CanonicalFrame<T> {
        &self.frame
    }

    pub fn length(&self) -> T {
        self.length
    }

    /// `r^2 = L^2 - ||v_ker||^2`, present for the ellipsoid cylinder only.
    pub fn radius_squared(&self) -> Option<T> {
        self.radius_squared
    }

    pub fn kernel_dim(&self) -> usize {
        self.frame.kernel_dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.frame.ambient_dim()
    }

    pub fn is_compact(&self) -> bool {
        self.kind == LocusKind::EllipsoidCylinder && self.kernel_dim() == 0
    }

    /// Manifold dimension: `k` for the affine case, `2N - 1 + k` for the cylinder.
    pub fn intrinsic_dim(&self) -> Option<usize> {
        match self.kind {
            LocusKind::Empty => None,
            LocusKind::Affine => Some(self.kernel_dim()),
            LocusKind::EllipsoidCylinder => {
                Some(2 * self.frame.rotation_count() - 1 + self.kernel_dim())
            }
        }
    }

    pub fn contains(&self, p: &[T], tol: &ToleranceConfig<T>) -> Result<Membership<T>> {
        let s2 = self.frame.speed_squared(p)?;
        if self.kind == LocusKind::Empty {
            return Ok(Membership {
                inside: false,
                defect: T::infinity(),
            });
        }
        let l2 = self.length * self.length;
        let defect = (s2 - l2).abs();
        Ok(Membership {
            inside: defect <= tol.membership_band(l2),
            defect,
        })
    }

    /// Maps a sphere parameter `u in R^{2N}` (normalized here) and kernel coordinates to the
    /// locus point with `z_j = (r / w_j) (u_{2j} + i u_{2j+1})`. For the affine locus `u` is
    /// ignored and `z = 0`.
    pub fn embed(&self, sphere: &[T], kernel: &[T]) -> Result<Vec<T>> {
        let n = self.frame.rotation_count();
        let planar = match self.kind {
            LocusKind::Empty => return Err(Error::EmptyLocus),
            LocusKind::Affine => vec![[T::zero(); 2]; n],
            LocusKind::EllipsoidCylinder => {
                if sphere.len() != 2 * n {
                    return Err(Error::DimensionMismatch {
                        expected: 2 * n,
                        found: sphere.len(),
                    });
                }
                let norm = vector::norm(sphere);
                if !(norm > T::zero()) {
                    return Err(Error::InvalidArgument(
                        "sphere parameter must be non-zero".into(),
                    ));
                }
                let r = self.radius_squared.expect("cylinder has a radius").sqrt();
                self.frame
                    .frequencies()
                    .iter()
                    .enumerate()
                    .map(|(j, w)| {
                        let s = r / (*w * norm);
                        [s * sphere[2 * j], s * sphere[2 * j + 1]]
                    })
                    .collect()
            }
        };
        self.frame.point(&CanonicalCoords {
            planar,
            kernel: kernel.to_vec(),
        })
    }

    /// Sphere parameter of a locus point (inverse of [`embed`](Self::embed) on the ellipsoid factor).
    pub fn sphere_parameter(&self, p: &[T]) -> Result<Vec<T>> {
        let c = self.frame.coords(p)?;
        let mut u: Vec<T> = self
            .frame
            .frequencies()
            .iter()
            .zip(&c.planar)
            .flat_map(|(w, [x, y])| [*w * *x, *w * *y])
            .collect();
        let n = vector::norm(&u);
        if n > T::zero() {
            u.iter_mut().for_each(|x| *x /= n);
        }
        Ok(u)
    }

    /// `n` deterministic points: `u` uniform on the unit sphere of `R^{2N}`, kernel
    /// coordinates uniform in `[-kernel_box, kernel_box]^k`.
    pub fn sample(&self, n: usize, seed: u64, kernel_box: T) -> Result<Vec<Vec<T>>> {
        if self.kind == LocusKind::Empty {
            return Err(Error::EmptyLocus);
        }
        if !(kernel_box > T::zero()) || !kernel_box.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "kernel_box must be positive, got {kernel_box}"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim_u = 2 * self.frame.rotation_count();
        let k = self.kernel_dim();
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let u = if self.kind == LocusKind::EllipsoidCylinder {
                sphere_direction(&mut rng, dim_u)
            } else {
                Vec::new()
            };
            let kernel: Vec<T> = (0..k)
                .map(|_| T::lit(rng.random_range(-1.0..=1.0)) * kernel_box)
                .collect();
            out.push(self.embed(&u, &kernel)?);
        }
        Ok(out)
    }
}

/// Unit vector uniform on `S^{d-1}` (normalized Gaussian).
pub(crate) fn sphere_direction<T: Real, R: Rng>(rng: &mut R, d: usize) -> Vec<T> {
    loop {
        let g: Vec<T> = (0..d)
            .map(|_| T::lit(rng.sample::<f64, _>(StandardNormal)))
            .collect();
        let n = vector::norm(&g);
        if n > T::zero() {
            return vector::scaled(&g, T::one() / n);
        }
    }
}

/// `<grad ||X||^2, X>` at `p`, with `X` evaluated through the reconstructed `(R, v)`.
pub fn tangency_defect<T: Real>(frame: &CanonicalFrame<T>, p: &[T]) -> Result<T> {
    let g = frame.speed_gradient(p)?;
    let x = frame.reconstruct().evaluate(p)?;
    Ok(vector::dot(&g, &x))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompactnessReport {
    pub ambient_dim: usize,
    pub rotation_count: usize,
    pub kernel_dim: usize,
    pub kind: LocusKind,
    pub compact: bool,
    pub locus_dim: Option<usize>,
    pub parity_note: String,
    /// Ambient dimension 3.
    pub surface_case: bool,
    pub surface_note: Option<String>,
}

pub fn compactness_report<T: Real>(
    ambient_dim: usize,
    frame: &CanonicalFrame<T>,
    length: T,
    tol: &ToleranceConfig<T>,
) -> Result<CompactnessReport> {
    if ambient_dim != frame.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: frame.ambient_dim(),
            found: ambient_dim,
        });
    }
    let locus = classify(frame, length, tol)?;
    let m = ambient_dim;
    let n = frame.rotation_count();
    let k = frame.kernel_dim();
    let compact = locus.is_compact();
    let parity_note = if compact {
        format!(
            "compact: complex ellipsoid of odd dimension {} in even ambient dimension {} = 2N",
            2 * n - 1,
            m
        )
    } else if m % 2 == 1 {
        format!(
            "not compact: ambient dimension {m} is odd, so k = m - 2N >= 1; a compact locus needs m = 2N"
        )
    } else if k > 0 {
        format!("not compact: flat factor R^{k} (k = m - 2N = {k}); a compact locus needs m = 2N")
    } else {
        format!("not compact: locus is {} at this length", locus.kind())
    };
    let surface_case = m == 3;
    let surface_note = surface_case.then(|| {
        "ambient dimension 3: no compact surface in R^3 is a constant-length locus of a Killing \
         field, since m = 2N is impossible"
            .to_string()
    });
    Ok(CompactnessReport {
        ambient_dim: m,
        rotation_count: n,
        kernel_dim: k,
        kind: locus.kind(),
        compact,
        locus_dim: locus.intrinsic_dim(),
        parity_note,
        surface_case,
        surface_note,
    })
}
