//! Floating-point scalar abstraction.
//!
//! All numerical code in this crate is generic over [`Scalar`], which is any
//! `num_traits::Float` carrying the tolerance constants used by constructors
//! and validators. `f64` is the type every documented tolerance refers to;
//! the `f32` instantiation uses correspondingly looser thresholds.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Scalar type for all real arithmetic (f32 or f64).
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Norm deviation allowed by type invariants (unit vectors, state norms).
    const NORM_EPS: Self;
    /// Norm deviation tolerated on external inputs before rejection.
    const INPUT_EPS: Self;
    /// Hermiticity / trace tolerance for density matrices.
    const DENSITY_EPS: Self;
    /// Eigenvalue floor when checking positive semidefiniteness.
    const PSD_FLOOR: Self;
    /// Largest imaginary residue silently discarded from a real trace.
    const IMAG_EPS: Self;

    /// Shorthand for converting an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal conversion")
    }
}

impl Scalar for f64 {
    const NORM_EPS: Self = 1e-12;
    const INPUT_EPS: Self = 1e-9;
    const DENSITY_EPS: Self = 1e-10;
    const PSD_FLOOR: Self = 1e-9;
    const IMAG_EPS: Self = 1e-10;
}

impl Scalar for f32 {
    const NORM_EPS: Self = 1e-5;
    const INPUT_EPS: Self = 1e-4;
    const DENSITY_EPS: Self = 1e-4;
    const PSD_FLOOR: Self = 1e-3;
    const IMAG_EPS: Self = 1e-4;
}
