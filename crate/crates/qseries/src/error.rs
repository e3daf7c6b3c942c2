//! Error types shared by the whole engine.

use std::fmt;

use crate::series::Exp;

/// Everything that can go wrong while building or combining series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Inversion requires the lowest-order coefficient to be a single
    /// invertible monomial in the declared symbols.
    NotInvertible(String),
    /// `substitute` with sign −1 is only meaningful on series whose exponents
    /// are integers; a fractional exponent has no well-defined sign twist.
    FractionalSignSubstitution { denom: i64 },
    /// A coefficient beyond the known truncation order was requested.
    OrderBeyondTruncation { requested: Exp, truncated_at: Exp },
    /// An infinite product whose factors do not tend to 1 (the argument fails
    /// to carry a positive power of q) cannot be expanded.
    DivergentProduct(String),
    /// A sum whose terms stopped gaining q-valuation; the series does not
    /// converge coefficientwise at the requested order.
    DivergentSum(String),
    /// Parameters that collapse a required denominator to zero (for example a
    /// Pochhammer factor 1−q⁰·1) make the expression non-generic.
    NonGenericParameters(String),
    /// A denominator vanishes identically in a declared symbol: the
    /// expression is a formal pole, not a Laurent series in q.
    FormalPole(String),
    /// A parameter is outside the documented domain of the operation.
    InvalidParameter(String),
    /// No built-in Bailey pair with this name.
    UnknownPair(String),
    /// No catalog entry with this name.
    UnknownEntry(String),
    /// A catalog entry was called with the wrong number or kind of arguments.
    BadArity {
        name: String,
        expected: String,
        got: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotInvertible(what) => write!(f, "not invertible: {what}"),
            Error::FractionalSignSubstitution { denom } => write!(
                f,
                "cannot substitute q \u{21a6} -q^k on a series with exponent denominator {denom}"
            ),
            Error::OrderBeyondTruncation { requested, truncated_at } => write!(
                f,
                "coefficient of q^{requested} requested, but the series is only known below q^{truncated_at}"
            ),
            Error::DivergentProduct(what) => write!(f, "divergent product: {what}"),
            Error::DivergentSum(what) => write!(f, "divergent sum: {what}"),
            Error::NonGenericParameters(what) => write!(f, "non-generic parameters: {what}"),
            Error::FormalPole(what) => write!(f, "formal pole: {what}"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::UnknownPair(name) => write!(f, "unknown Bailey pair: {name}"),
            Error::UnknownEntry(name) => write!(f, "unknown catalog entry: {name}"),
            Error::BadArity { name, expected, got } => {
                write!(f, "{name} expects {expected}, got {got} argument(s)")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
