//! Numeric backends for max-plus entries.
//!
//! Everything in this crate is generic over [`Scalar`]. The floating point
//! types are the everyday choice; [`Rational64`] gives exact arithmetic for
//! cycle means that are not representable in binary (e.g. `1/3`).

use std::fmt::{Debug, Display};

use num_rational::Rational64;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Real-like ordered field used for finite max-plus values.
pub trait Scalar:
    Num + Signed + Copy + PartialOrd + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Comparison slack used when the caller does not pick one.
    fn default_tolerance() -> Self;

    fn from_usize_exact(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    /// `|self - other| <= tol`.
    fn approx_eq(self, other: Self, tol: Self) -> bool {
        (self - other).abs() <= tol
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Scalar for f64 {
    fn default_tolerance() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    fn default_tolerance() -> Self {
        1e-5
    }
}

impl Scalar for Rational64 {
    fn default_tolerance() -> Self {
        Rational64::from_integer(0)
    }
}
