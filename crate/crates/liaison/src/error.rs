//! Error type shared across the crate.

use std::fmt;

/// Errors produced by ring construction, ideal operations and realizations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A modulus that is not a prime number.
    NotPrime(u64),
    /// Two values from different rings (prime or variable count differ) were combined.
    RingMismatch { expected: String, found: String },
    /// A monomial with the wrong number of exponents for the active order.
    DimensionMismatch { expected: usize, found: usize },
    /// A generator that is not homogeneous.
    Inhomogeneous { index: usize },
    /// An operation that requires a nonzero polynomial received zero.
    ZeroPolynomial,
    /// An operation that requires a nonzero ideal received the zero ideal.
    ZeroIdeal,
    /// Containment I ⊆ J required but not satisfied.
    NotContained { detail: String },
    /// Codimension precondition failed.
    CodimMismatch { expected: usize, found: usize },
    /// Complex stage counts do not line up.
    LengthMismatch { detail: String },
    /// Invalid link or sweep parameters.
    InvalidSpec(String),
    /// Random realization kept producing degenerate data.
    DegenerateRealization { seed: u64, attempts: u32, detail: String },
    /// A diagram column needed by a verdict is empty.
    EmptyColumn { column: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::RingMismatch { expected, found } => {
                write!(f, "ring mismatch: expected {expected}, found {found}")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "monomial has {found} exponents, order expects {expected}")
            }
            Error::Inhomogeneous { index } => {
                write!(f, "generator {index} is not homogeneous")
            }
            Error::ZeroPolynomial => write!(f, "zero polynomial not allowed here"),
            Error::ZeroIdeal => write!(f, "zero ideal not allowed here"),
            Error::NotContained { detail } => write!(f, "containment failure: {detail}"),
            Error::CodimMismatch { expected, found } => {
                write!(f, "codimension {found}, expected {expected}")
            }
            Error::LengthMismatch { detail } => write!(f, "length mismatch: {detail}"),
            Error::InvalidSpec(s) => write!(f, "invalid parameters: {s}"),
            Error::DegenerateRealization { seed, attempts, detail } => write!(
                f,
                "degenerate realization after {attempts} attempts (seed {seed}): {detail}"
            ),
            Error::EmptyColumn { column } => write!(f, "diagram column {column} is empty"),
        }
    }
}

impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
