//! Exact Bell-polynomial and power-series machinery for Calabi's Ricci-flat
//! potential on canonical bundles over Kähler-Einstein manifolds.
//!
//! - [`exact`]: arbitrary-precision rationals and combinatorial helpers.
//! - [`bell`]: partial/complete Bell polynomials, two algorithms plus a growable table.
//! - [`series`]: truncated formal power series.
//! - [`potential`]: Taylor coefficients of `u` (two methods), its closed form, and `h_r`.
//! - [`inequality`]: the alternating Bell-sum sign scan.
//! - [`diastasis`]: coefficient blocks over `CP^d` and PSD checks.
//! - [`cli`]: the command-line front end.

pub mod bell;
pub mod cli;
pub mod diastasis;
pub mod error;
pub mod exact;
pub mod inequality;
pub mod potential;
pub mod registry;
pub mod series;

pub use error::{Error, Result};
pub use exact::{ExactInt, Rational};
