//! Scalar abstraction for scores, weights and metric values.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

/// Floating point type used for scores: `f32` or `f64`.
///
/// Counts (document frequencies, term frequencies, ranks) are always integers;
/// only the quantities derived from them go through this trait.
pub trait Real:
    num_traits::Float
    + num_traits::FromPrimitive
    + num_traits::ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Converts an integer count. Exact for counts below the mantissa width.
    fn of_count(n: u64) -> Self {
        Self::from_u64(n).expect("count representable as float")
    }

    /// Converts an `f64` constant, rounding to the nearest representable value.
    fn of_f64(x: f64) -> Self {
        Self::from_f64(x).expect("finite constant")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
