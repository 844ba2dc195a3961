//! Scalar abstraction: every numerical routine in this crate is generic over
//! [`Real`], instantiated as `f32` or `f64` (aliases at the crate root use `f64`).

use std::fmt;
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar for measures, grids and quadratures.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Convert an `f64` parameter or literal into the working scalar.
    #[inline]
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("f64 value representable in scalar type")
    }

    /// Widen to `f64` for reporting.
    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("scalar convertible to f64")
    }
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + NumAssign
        + Sum
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
        + 'static
{
}

/// 2*pi in the working scalar, used by every phase computation.
#[inline]
pub fn two_pi<R: Real>() -> R {
    R::PI() + R::PI()
}
