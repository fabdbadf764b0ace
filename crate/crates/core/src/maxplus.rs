//! Elements of the max-plus semiring `(R ∪ {ε}, ⊕ = max, ⊗ = +)`.
//!
//! `ε = -∞` is kept as an explicit variant rather than a sentinel float so
//! that arithmetic on it never overflows and comparisons stay exact.
//! `std::ops::Add` is `⊕` and `std::ops::Mul` is `⊗`.

use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A max-plus scalar. `Epsilon` sorts below every finite value.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub enum MaxPlus<T> {
    Epsilon,
    Finite(T),
}

impl<T: Scalar> MaxPlus<T> {
    /// `ε`, the ⊕-neutral element.
    pub const EPSILON: Self = MaxPlus::Epsilon;

    /// `e = 0`, the ⊗-identity.
    pub fn e() -> Self {
        MaxPlus::Finite(T::zero())
    }

    pub fn finite(value: T) -> Self {
        MaxPlus::Finite(value)
    }

    /// Maps `-inf` to `ε`; any other value must be finite.
    pub fn from_f64(value: f64) -> Self {
        if value == f64::NEG_INFINITY {
            MaxPlus::Epsilon
        } else {
            MaxPlus::Finite(T::from_f64(value).expect("finite value representable in scalar type"))
        }
    }

    pub fn is_epsilon(&self) -> bool {
        matches!(self, MaxPlus::Epsilon)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_epsilon()
    }

    pub fn value(&self) -> Option<T> {
        match *self {
            MaxPlus::Epsilon => None,
            MaxPlus::Finite(v) => Some(v),
        }
    }

    /// Lossy conversion for display and export; `ε` becomes `-inf`.
    pub fn to_f64(&self) -> f64 {
        match self {
            MaxPlus::Epsilon => f64::NEG_INFINITY,
            MaxPlus::Finite(v) => v.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// `a ⊕ b = max(a, b)`.
    pub fn oplus(self, other: Self) -> Self {
        match (self, other) {
            (MaxPlus::Epsilon, x) | (x, MaxPlus::Epsilon) => x,
            (MaxPlus::Finite(a), MaxPlus::Finite(b)) => MaxPlus::Finite(a.max_of(b)),
        }
    }

    /// `a ⊗ b = a + b`, absorbing on `ε`.
    pub fn otimes(self, other: Self) -> Self {
        match (self, other) {
            (MaxPlus::Finite(a), MaxPlus::Finite(b)) => MaxPlus::Finite(a + b),
            _ => MaxPlus::Epsilon,
        }
    }

    /// `x^⊗r = r·x`. For `ε`: `ε^⊗0 = e`, `ε^⊗r = ε` for `r > 0`, error for `r < 0`.
    pub fn mpow(self, r: T) -> Result<Self> {
        match self {
            MaxPlus::Finite(x) => Ok(MaxPlus::Finite(r * x)),
            MaxPlus::Epsilon if r.is_zero() => Ok(Self::e()),
            MaxPlus::Epsilon if r > T::zero() => Ok(MaxPlus::Epsilon),
            MaxPlus::Epsilon => Err(Error::NegativePowerOfEpsilon),
        }
    }

    /// Integer power, always defined for `p >= 0`.
    pub fn pow(self, p: u32) -> Self {
        match self {
            MaxPlus::Finite(x) => MaxPlus::Finite(T::from_u32(p).expect("exponent representable") * x),
            MaxPlus::Epsilon if p == 0 => Self::e(),
            MaxPlus::Epsilon => MaxPlus::Epsilon,
        }
    }

    /// `ε` matches only `ε`; finite values match within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        match (self, other) {
            (MaxPlus::Epsilon, MaxPlus::Epsilon) => true,
            (MaxPlus::Finite(a), MaxPlus::Finite(b)) => a.approx_eq(*b, tol),
            _ => false,
        }
    }
}

// derived Default would demand `T: Default`
#[allow(clippy::derivable_impls)]
impl<T: Scalar> Default for MaxPlus<T> {
    fn default() -> Self {
        MaxPlus::Epsilon
    }
}

impl<T: Scalar> From<T> for MaxPlus<T> {
    fn from(value: T) -> Self {
        MaxPlus::Finite(value)
    }
}

impl<T: Scalar> Add for MaxPlus<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        self.oplus(rhs)
    }
}

impl<T: Scalar> Mul for MaxPlus<T> {
    type Output = Self;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Self) -> Self {
        self.otimes(rhs)
    }
}

impl<T: Scalar> Zero for MaxPlus<T> {
    fn zero() -> Self {
        MaxPlus::Epsilon
    }

    fn is_zero(&self) -> bool {
        self.is_epsilon()
    }
}

impl<T: Scalar> One for MaxPlus<T> {
    fn one() -> Self {
        Self::e()
    }
}

impl<T: Scalar> fmt::Display for MaxPlus<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaxPlus::Epsilon => f.write_str("ε"),
            MaxPlus::Finite(v) => write!(f, "{v}"),
        }
    }
}

// JSON: finite entries are numbers, ε is the string "-inf".
impl<T: Scalar> Serialize for MaxPlus<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MaxPlus::Epsilon => serializer.serialize_str("-inf"),
            MaxPlus::Finite(v) => {
                let x = v
                    .to_f64()
                    .ok_or_else(|| serde::ser::Error::custom("value not representable as f64"))?;
                serializer.serialize_f64(x)
            }
        }
    }
}

impl<'de, T: Scalar> Deserialize<'de> for MaxPlus<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Number(x) if x.is_finite() => T::from_f64(x)
                .map(MaxPlus::Finite)
                .ok_or_else(|| de::Error::custom(format!("{x} not representable"))),
            Raw::Number(x) => Err(de::Error::custom(format!("non-finite number {x}; use \"-inf\""))),
            Raw::Text(s) if s == "-inf" => Ok(MaxPlus::Epsilon),
            Raw::Text(s) => Err(de::Error::custom(format!("expected number or \"-inf\", got {s:?}"))),
        }
    }
}
