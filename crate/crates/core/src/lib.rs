//! Two-setting four-qubit Bell operators: construction, see-saw
//! maximization of their expectation values over measurement settings, Pauli
//! correlation tensors, and separability-class exclusion witnesses.
//!
//! The crate is generic over the floating-point scalar via [`Scalar`]
//! (`f32` or `f64`); the `*64` aliases at the root fix `f64`, which is what
//! the CLI and every documented tolerance use.

pub mod algebra;
pub mod bell;
pub mod classify;
pub mod correlation;
mod error;
pub mod optimize;
mod scalar;
pub mod states;
pub mod survey;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Complex double-precision scalar.
pub type C64 = num_complex::Complex<f64>;
/// Dense complex matrix over f64.
pub type Matrix64 = algebra::ComplexMatrix<f64>;
/// Unit direction vector over f64.
pub type UnitVector64 = algebra::UnitVector3<f64>;
/// Pure state over f64.
pub type PureState64 = algebra::PureState<f64>;
/// Density matrix over f64.
pub type DensityMatrix64 = algebra::DensityMatrix<f64>;
/// Measurement settings over f64.
pub type SettingSet64 = bell::SettingSet<f64>;
/// Optimizer configuration over f64.
pub type OptimizeConfig64 = optimize::OptimizeConfig<f64>;
/// Optimizer result over f64.
pub type OptimizeResult64 = optimize::OptimizeResult<f64>;
/// Correlation tensor over f64.
pub type CorrelationTensor64 = correlation::CorrelationTensor<f64>;
/// Classification report over f64.
pub type ClassificationReport64 = classify::ClassificationReport<f64>;
