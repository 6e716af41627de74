//! Exact q-series engine for Andrews-Bressoud series and their Wronskians.
//!
//! Series live on exponent lattices `(1/D)·Z` with an explicit truncation
//! cutoff; the core is generic over the coefficient field ([`Scalar`]) and is
//! instantiated exactly at [`Rational`] for everything that verifies an
//! identity.

pub mod builders;
pub mod error;
pub mod json;
pub mod modular;
pub mod properties;
pub mod scalar;
pub mod series;
pub mod verify;
pub mod wronskian;

#[cfg(test)]
mod test_util;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use series::{Exponent, QSeries};

/// Exact arbitrary-precision rational coefficients.
pub type Rational = num_rational::BigRational;

/// The exact series type used throughout the verification pipeline.
pub type Series = QSeries<Rational>;

/// Double-precision series, for numerical exploration only.
pub type FloatSeries = QSeries<f64>;

/// Shorthand for the exponent `n/d`.
pub fn exponent(n: i64, d: i64) -> Exponent {
    Exponent::new(n, d)
}
