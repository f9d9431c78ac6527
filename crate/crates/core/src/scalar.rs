//! Scalar abstraction: all simulation math is generic over the floating-point
//! type. `f64` is the default used by the CLI and the concrete aliases at the
//! crate root; `f32` is available for memory-constrained experiments.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Floating-point scalar underlying amplitudes, energies, and probabilities.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + Send + Sync + Debug + Display + 'static
{
    /// Shorthand for a lossless-enough conversion from `f64` constants.
    fn from_f64_c(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant representable")
    }

    fn to_f64_c(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).expect("scalar convertible to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Complex amplitude over a [`Scalar`].
pub type C<F> = Complex<F>;

/// `1 + 0i`.
pub fn one<F: Scalar>() -> C<F> {
    C::new(F::one(), F::zero())
}

/// `0 + 0i`.
pub fn zero<F: Scalar>() -> C<F> {
    C::new(F::zero(), F::zero())
}

/// `0 + 1i`.
pub fn i<F: Scalar>() -> C<F> {
    C::new(F::zero(), F::one())
}

/// `e^{i theta}`.
pub fn cis<F: Scalar>(theta: F) -> C<F> {
    C::new(theta.cos(), theta.sin())
}
