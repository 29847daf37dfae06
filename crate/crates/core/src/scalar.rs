//! Scalar abstractions shared by the exact and floating-point parts of the crate.
//!
//! The tableau engine works on machine residues. Two other layers are generic:
//! the dense reference backend runs over any [`Real`] (`f32` or `f64`), and the
//! Smith-normal-form machinery runs over any [`ExactInt`] ring (`i64` for quick
//! checks, [`num_bigint::BigInt`] when intermediates must never wrap).

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{Float, FloatConst, FromPrimitive, Signed, ToPrimitive};

/// Floating-point scalar for dense amplitudes and matrices.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + Default + 'static {
    /// Numerical floor used when deciding whether an amplitude is zero.
    fn zero_tolerance() -> Self;
}

impl Real for f32 {
    fn zero_tolerance() -> Self {
        1e-5
    }
}

impl Real for f64 {
    fn zero_tolerance() -> Self {
        1e-9
    }
}

/// Exact signed integer ring used for unimodular eliminations.
pub trait ExactInt: Integer + Signed + Clone + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync {}

impl<T> ExactInt for T where T: Integer + Signed + Clone + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync {}
