//! Floating-point scalar abstraction and tolerance scaling.

use std::fmt;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar for the general numeric paths: f32 or f64.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + fmt::Debug + fmt::Display + 'static
{
    /// Lossy conversion from f64, panicking only on non-finite input.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 representable in scalar type")
    }

    /// Widening conversion to f64.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Tolerance for Σ|amplitude|² = 1 checks: 1e−12 for f64, scaled up for
/// coarser scalar types.
pub fn norm_tolerance<T: Scalar>() -> T {
    T::of(1e-12).max(T::epsilon() * T::of(1e3))
}

/// Tolerance for directly constructed identities: 1e−12 for f64.
pub fn identity_tolerance<T: Scalar>() -> T {
    T::of(1e-12).max(T::epsilon() * T::of(1e3))
}

/// Tolerance for composed computations (products, rotations): 1e−10 for f64.
pub fn composed_tolerance<T: Scalar>() -> T {
    T::of(1e-10).max(T::epsilon() * T::of(1e5))
}

/// An outcome is predictable with certainty when its probability is at
/// least 1 minus this tolerance: 1e−10 for f64.
pub fn certainty_tolerance<T: Scalar>() -> T {
    T::of(1e-10).max(T::epsilon() * T::of(1e2))
}

/// Probabilities below this threshold are treated as impossible outcomes:
/// 1e−15 for f64.
pub fn impossible_probability<T: Scalar>() -> T {
    T::of(1e-15).max(T::epsilon() * T::epsilon() * T::of(1e2))
}
