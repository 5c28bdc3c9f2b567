use crate::error::{Error, Result};
use crate::Real;

/// Numerical thresholds used across the crate.
///
/// The defaults for `f64` are the reference values; for lower-precision scalars each field is
/// raised to a small multiple of machine epsilon so that every threshold remains attainable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig<T> {
    /// Eigenvalues of `-R^2` below `zero_freq_rel * lambda_max` belong to the kernel.
    pub zero_freq_rel: T,
    /// Absolute membership tolerance, applied as `membership_tol * max(1, scale)`.
    pub membership_tol: T,
    /// Jacobi stops once the off-diagonal Frobenius norm drops below `eig_convergence * ||S||_F`.
    pub eig_convergence: T,
    /// Step for finite-difference cross-checks.
    pub fd_step: T,
    /// Singular values below `rank_tol * sigma_max` count as zero.
    pub rank_tol: T,
}

impl<T: Real> Default for ToleranceConfig<T> {
    fn default() -> Self {
        Self {
            zero_freq_rel: T::floor_eps(1e-10, 1e3),
            membership_tol: T::floor_eps(1e-9, 1e3),
            eig_convergence: T::floor_eps(1e-13, 16.0),
            fd_step: T::lit(1e-5).max(T::epsilon().cbrt()),
            rank_tol: T::floor_eps(1e-8, 1e3),
        }
    }
}

impl<T: Real> ToleranceConfig<T> {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("zero_freq_rel", self.zero_freq_rel),
            ("membership_tol", self.membership_tol),
            ("eig_convergence", self.eig_convergence),
            ("fd_step", self.fd_step),
            ("rank_tol", self.rank_tol),
        ];
        for (name, v) in fields {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(Error::InvalidTolerance(format!(
                    "{name} must be strictly positive and finite, got {v}"
                )));
            }
        }
        if self.zero_freq_rel >= T::one() {
            return Err(Error::InvalidTolerance("zero_freq_rel must be < 1".into()));
        }
        if self.rank_tol >= T::one() {
            return Err(Error::InvalidTolerance("rank_tol must be < 1".into()));
        }
        Ok(())
    }

    /// Membership band for a quantity of magnitude `scale`.
    #[inline]
    pub fn membership_band(&self, scale: T) -> T {
        self.membership_tol * T::one().max(scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_defaults_are_reference_values() {
        let t = ToleranceConfig::<f64>::default();
        assert_eq!(t.zero_freq_rel, 1e-10);
        assert_eq!(t.membership_tol, 1e-9);
        assert_eq!(t.eig_convergence, 1e-13);
        assert_eq!(t.fd_step, 1e-5);
        assert_eq!(t.rank_tol, 1e-8);
        t.validate().unwrap();
    }

    #[test]
    fn f32_defaults_are_attainable() {
        let t = ToleranceConfig::<f32>::default();
        assert!(t.eig_convergence > f32::EPSILON);
        assert!(t.membership_tol > 1e-9);
        t.validate().unwrap();
    }

    #[test]
    fn rejects_bad_fields() {
        let d = ToleranceConfig::<f64>::default();
        assert!(ToleranceConfig { fd_step: 0.0, ..d }.validate().is_err());
        assert!(ToleranceConfig { rank_tol: 1.0, ..d }.validate().is_err());
        assert!(ToleranceConfig {
            zero_freq_rel: -1e-3,
            ..d
        }
        .validate()
        .is_err());
    }
}
