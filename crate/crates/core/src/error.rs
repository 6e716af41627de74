use thiserror::Error;

use crate::series::Exponent;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An exponent lattice or numerator left the `i64` range.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// An operation that needs a nonzero series (inversion, valuation) got zero.
    #[error("{0} of the zero series")]
    ZeroSeries(&'static str),

    /// The inputs are not known far enough to produce the requested cutoff.
    #[error(
        "insufficient precision: need terms through q^{needed}, only known through q^{available}"
    )]
    InsufficientPrecision {
        needed: Exponent,
        available: Exponent,
    },

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The Wronskian of a proposed fundamental system vanishes to working precision.
    #[error("series are linearly dependent to working precision")]
    DependentSystem,

    #[error("series has non-integral exponent q^{0}")]
    NonIntegralExponent(Exponent),

    #[error("series has negative exponent q^{0}")]
    NegativeExponent(Exponent),

    /// Basis construction found dependent generators. Never expected.
    #[error("basis of weight {0} is degenerate")]
    DegenerateBasis(i64),

    #[error("malformed series encoding: {0}")]
    Decode(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),
}
