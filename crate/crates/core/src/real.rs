//! Floating scalar abstraction.
//!
//! All numerical code is generic over [`Real`], a bundle of the num-traits
//! capabilities the library actually uses. `f32` and `f64` satisfy it out of
//! the box. Special-function kernels carry hard-won `f64` coefficient tables;
//! they evaluate internally in `f64` and convert at the boundary, which is
//! exact for `f64` callers and as good as `f32` can represent otherwise.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::float::FloatConst;
use num_traits::{Float, FromPrimitive, ToPrimitive};

pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Debug
    + Display
    + 'static
{
    /// Lift an `f64` constant into the scalar type.
    fn rf(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant must be representable")
    }

    /// Lower to `f64` (used at special-function kernel boundaries).
    fn lower(self) -> f64 {
        self.to_f64().expect("scalar must convert to f64")
    }
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + AddAssign
        + SubAssign
        + MulAssign
        + DivAssign
        + Sum
        + Debug
        + Display
        + 'static
{
}
