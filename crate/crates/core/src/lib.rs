//! Capacity regions, outer bounds and constant-gap achievable sum rates for
//! the two-user interference channel with rate-limited feedback.
//!
//! The linear deterministic model is handled exactly over rationals
//! ([`ldic`]); the Gaussian model is evaluated in floating point
//! ([`gaussian`]). Both produce [`region::RateRegion`]s.

pub mod error;
pub mod gaussian;
pub mod ldic;
pub mod region;
pub mod scalar;

pub use error::{GaussianError, ModelError, RegionError, SimError};
pub use scalar::{parse_rational, rat, Rational, Scalar};

/// Region over exact rationals (deterministic model).
pub type ExactRegion = region::RateRegion<Rational>;
/// Region over `f64` (Gaussian model).
pub type RealRegion = region::RateRegion<f64>;
pub type ExactPair = region::RatePair<Rational>;
pub type RealPair = region::RatePair<f64>;
pub type ExactConstraint = region::RateConstraint<Rational>;
pub type RealConstraint = region::RateConstraint<f64>;
