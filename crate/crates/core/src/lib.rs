//! Max-plus linear algebra and the discrete-event model of legged gaits.
//!
//! * [`MaxPlus`] and [`Matrix`]: the semiring `(ℝ ∪ {-∞}, max, +)` and dense matrices over it.
//! * [`spectral`]: precedence graphs, maximum cycle mean, critical graph, coupling time.
//! * [`gait`]: gaits as ordered leg partitions, their system matrices and closed forms.
//! * [`sim`]: trajectories, leg schedules and Hildebrand diagrams.
//!
//! All numeric code is generic over [`Scalar`]; the aliases below fix the
//! two common choices.

pub mod error;
pub mod gait;
pub mod matrix;
pub mod maxplus;
pub mod scalar;
pub mod sim;
pub mod spectral;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use maxplus::MaxPlus;
pub use num_rational::Rational64;
pub use scalar::Scalar;

pub type MaxPlusScalar = MaxPlus<f64>;
pub type MaxPlusMatrix = Matrix<f64>;
pub type RationalScalar = MaxPlus<Rational64>;
pub type RationalMatrix = Matrix<Rational64>;
