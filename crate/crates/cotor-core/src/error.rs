//! Error type shared by all engines.

use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The modulus passed to [`crate::field::Prime::new`] is not prime, or out of range.
    NotPrime(u64),
    /// Two objects built over different primes were combined.
    PrimeMismatch { left: u32, right: u32 },
    /// A computation needs data in degrees the certified window does not cover.
    WindowTooSmall {
        what: &'static str,
        needed: i32,
        certified: i32,
    },
    /// Matrix/vector shape disagreement.
    ShapeMismatch { what: &'static str },
    /// A linear system has no solution.
    Inconsistent,
    /// A label does not exist in the space it was looked up in.
    UnknownLabel { label: String },
    /// Duplicate basis label within a single degree.
    DuplicateLabel { degree: i32, label: String },
    /// The given span is not closed under the coaction.
    NotASubcomodule { degree: i32, witness: String },
    /// The generated subalgebra is not closed under the comultiplication.
    NotASubcoalgebra { degree: i32, witness: String },
    /// A comodule map failed to be injective or to intertwine coactions.
    NotAComoduleMap { degree: i32, detail: &'static str },
    /// The bialgebra does not have the shape required by the operation.
    WrongShape { expected: &'static str },
    /// Named classical comodule is not available at this prime.
    UnsupportedPair { name: String, prime: u32 },
    /// Spectral sequence did not collapse within the requested page bound.
    NotCollapsed { r_max: usize },
    /// The primitive filtration does not have the length the operation requires.
    FiltrationTooLong { length: usize, required: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(n) => write!(f, "{n} is not a prime in [2, 2^31)"),
            Error::PrimeMismatch { left, right } => {
                write!(f, "prime mismatch: {left} vs {right}")
            }
            Error::WindowTooSmall {
                what,
                needed,
                certified,
            } => write!(
                f,
                "window too small for {what}: need degree {needed}, certified up to {certified}"
            ),
            Error::ShapeMismatch { what } => write!(f, "shape mismatch in {what}"),
            Error::Inconsistent => write!(f, "linear system is inconsistent"),
            Error::UnknownLabel { label } => write!(f, "unknown basis label `{label}`"),
            Error::DuplicateLabel { degree, label } => {
                write!(f, "duplicate basis label `{label}` in degree {degree}")
            }
            Error::NotASubcomodule { degree, witness } => write!(
                f,
                "span is not a subcomodule: coaction of `{witness}` (degree {degree}) leaves it"
            ),
            Error::NotASubcoalgebra { degree, witness } => write!(
                f,
                "not a subcoalgebra: comultiplication of `{witness}` (degree {degree}) leaves the span"
            ),
            Error::NotAComoduleMap { degree, detail } => {
                write!(f, "not a comodule map in degree {degree}: {detail}")
            }
            Error::WrongShape { expected } => write!(f, "bialgebra is not {expected}"),
            Error::UnsupportedPair { name, prime } => {
                write!(f, "`{name}` is not supported at p = {prime}")
            }
            Error::NotCollapsed { r_max } => {
                write!(f, "spectral sequence not collapsed by page {r_max}")
            }
            Error::FiltrationTooLong { length, required } => write!(
                f,
                "primitive filtration has length {length}, operation requires at most {required}"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
