//! Killing vector fields of constant length in Euclidean space.
//!
//! A Killing field of `R^m` is `X(p) = R p + v` with `R` skew. The crate computes its
//! canonical frame of invariant planes, classifies the set where `||X||` equals a given
//! constant (empty, affine, or a cylinder over a complex ellipsoid), evaluates the shape
//! operator of the compact ellipsoids, and recovers ambient fields from sampled data.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the aliases at the crate root fix
//! the scalar to `f64`.

// `!(x > 0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod geometry;
pub mod killing;
pub mod linalg;
pub mod locus;
pub mod rigidity;
mod scalar;

pub use error::{Error, Result};
pub use geometry::{
    axixi, normal, roundness_test, second_fundamental_form, shape_operator, tangent_basis,
    RoundnessReport, ShapeReport,
};
pub use killing::{CanonicalCoords, CanonicalFrame, EuclideanKillingField, InvariantPlane};
pub use linalg::{
    solve_least_squares, sym_eigendecompose, LeastSquares, Matrix, SymEigen, ToleranceConfig,
};
pub use locus::{
    classify, compactness_report, tangency_defect, CompactnessReport, ConstantLengthLocus,
    LocusKind, Membership,
};
pub use rigidity::{
    extendability_report, field_distance, fit_ambient_killing, flow, parameter_count,
    subset_consistency, ExtendabilityReport, FieldSampleSet, KillingFit, SubsetConsistency,
};
pub use scalar::Real;

pub type KillingField = EuclideanKillingField<f64>;
pub type Frame = CanonicalFrame<f64>;
pub type Locus = ConstantLengthLocus<f64>;
pub type Shape = ShapeReport<f64>;
pub type Tolerances = ToleranceConfig<f64>;
pub type Samples = FieldSampleSet<f64>;
pub type Mat = Matrix<f64>;

pub type KillingField32 = EuclideanKillingField<f32>;
pub type Frame32 = CanonicalFrame<f32>;
pub type Tolerances32 = ToleranceConfig<f32>;
