//! Real scalar abstraction underlying all complex arithmetic in the crate.

use std::fmt::Debug;
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssignOps, ToPrimitive};

/// Complex number over the crate's generic real scalar.
pub type C<S> = Complex<S>;

/// Floating-point scalar the tensor algebra is generic over (`f32`, `f64`).
pub trait RealScalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssignOps
    + Sum
    + Debug
    + Send
    + Sync
    + 'static
{
    /// Conversion from an `f64` literal (tolerances, grid endpoints).
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 literal")
    }

    /// Lossy view as `f64`, for diagnostics and serialization.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// log base 2; all entanglement and fidelity quantities are in bits.
    #[inline]
    fn log2_checked(self) -> Self {
        self.log2()
    }
}

impl<T> RealScalar for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + NumAssignOps
        + Sum
        + Debug
        + Send
        + Sync
        + 'static
{
}

/// `1` as a complex number.
#[inline]
pub fn c_one<S: RealScalar>() -> C<S> {
    C::new(S::one(), S::zero())
}

/// `0` as a complex number.
#[inline]
pub fn c_zero<S: RealScalar>() -> C<S> {
    C::new(S::zero(), S::zero())
}
