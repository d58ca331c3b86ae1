//! Scalar abstraction so the solver can run at `f32` or `f64` precision.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, ToPrimitive};
use rand::distributions::uniform::SampleUniform;

/// Floating-point scalar the solver is generic over.
///
/// Implemented for `f32` and `f64` via the blanket impl below; anything that
/// behaves like an IEEE float with sampling, parsing and printing support
/// qualifies.
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + SampleUniform
    + Sum
    + Debug
    + Display
    + FromStr
    + Send
    + Sync
    + 'static
{
}

impl<T> Real for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + SampleUniform
        + Sum
        + Debug
        + Display
        + FromStr
        + Send
        + Sync
        + 'static
{
}

/// Converts an `f64` constant into `R`. Panics only if `R` cannot represent
/// any finite value of this magnitude, which cannot happen for the small
/// constants used throughout this crate.
#[inline]
pub(crate) fn real<R: Real>(v: f64) -> R {
    R::from_f64(v).expect("constant representable in scalar type")
}
