//! Scalar abstractions shared by the numeric parts of the crate.

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive, Num, NumCast};

/// A number the PN estimates can be evaluated in: `f32`, `f64` or an exact
/// rational such as [`crate::Rational`].
pub trait Scalar: Num + Copy + PartialOrd + FromPrimitive + Debug {}

impl<T> Scalar for T where T: Num + Copy + PartialOrd + FromPrimitive + Debug {}

/// IEEE floating point scalar (activities, regression).
pub trait Real: Scalar + Float + NumCast + Send + Sync {}

impl<T> Real for T where T: Scalar + Float + NumCast + Send + Sync {}

/// Converts a `u64` count into `S`.
///
/// Panics only if `S` cannot represent small integers, which none of the
/// supported scalars do.
pub(crate) fn from_count<S: Scalar>(value: u64) -> S {
    S::from_u64(value).expect("scalar type cannot represent a count")
}
