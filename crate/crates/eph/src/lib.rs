//! Möbius geometry of cycles in the elliptic, parabolic and hyperbolic planes.
//!
//! Everything is generic over [`Scalar`], with exact rationals ([`Rational`])
//! for identity checks and `f64` for rendering and limits.

pub mod cayley;
pub mod clifford;
pub mod cycles;
pub mod error;
pub mod infinitesimal;
pub mod metric;
pub mod moebius;
pub mod relations;
pub mod scalar;
pub mod sign;

pub use cayley::CayleyKind;
pub use clifford::{CliffMatrix, CliffNum};
pub use cycles::{Cycle, CycleContext, Normalization, Roots};
pub use error::{EphError, Result};
pub use moebius::{ExtendedPoint, SL2};
pub use scalar::Scalar;
pub use sign::Sign;

/// Arbitrary-precision rational backend.
pub type Rational = num_rational::BigRational;

pub type CycleQ = Cycle<Rational>;
pub type CycleF = Cycle<f64>;
pub type CliffNumQ = CliffNum<Rational>;
pub type CliffNumF = CliffNum<f64>;
pub type SL2Q = SL2<Rational>;
pub type SL2F = SL2<f64>;
pub type PointQ = ExtendedPoint<Rational>;
pub type PointF = ExtendedPoint<f64>;
