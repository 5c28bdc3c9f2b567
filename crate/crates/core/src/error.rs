use thiserror::Error;

/// Errors raised by the library. Numeric payloads are widened to `f64`.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not symmetric: relative asymmetry {asymmetry:e}")]
    NonSymmetricInput { asymmetry: f64 },
    #[error("matrix is not skew-symmetric: ||R + R^T||_F = {defect:e}")]
    NotSkewSymmetric { defect: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("length must be strictly positive, got {length}")]
    NonPositiveLength { length: f64 },
    #[error("the constant-length locus is empty")]
    EmptyLocus,
    #[error("point is not on the locus: defect {defect:e} exceeds {tolerance:e}")]
    PointOffLocus { defect: f64, tolerance: f64 },
    #[error("the locus is not compact (kernel dimension {kernel_dim})")]
    NonCompactLocus { kernel_dim: usize },
    #[error("vector is not tangent: normal component {normal_component:e}")]
    NonTangentVector { normal_component: f64 },
    #[error("sample set is empty")]
    EmptySampleSet,
    #[error("non-finite value in input")]
    NonFinite,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
}

pub type Result<T> = std::result::Result<T, Error>;
