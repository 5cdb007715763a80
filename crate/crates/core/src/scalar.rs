//! Scalar abstraction for the numeric kernels.
//!
//! Everything in this crate is written against [`Scalar`] so the same code
//! runs in `f32` or `f64`; the concrete aliases at the crate root pin `f64`,
//! which is what the documented tolerances assume.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar used throughout the toolkit.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + NumAssign + Sum + Default + Debug + Display + 'static
{
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + ToPrimitive + NumAssign + Sum + Default + Debug + Display + 'static
{
}

/// Converts an `f64` constant (tolerance, literal) into the working scalar.
pub fn scalar<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("constant representable in scalar type")
}

/// Lossy view of a scalar as `f64`, for diagnostics and error payloads.
pub fn to_f64<T: Scalar>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
