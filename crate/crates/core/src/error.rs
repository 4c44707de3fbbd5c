use alloc::string::String;
use core::fmt;

use crate::algebra::field::Field;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    NotPrime(u32),
    FieldMismatch(Field, Field),
    /// Polynomials living in rings with different numbers of `T` variables.
    RingMismatch(usize, usize),
    DivisionByZero,
    TooManyVariables(usize),
    ExponentOverflow,
    ZeroPolynomial,
    /// Two monomials of the same polynomial with different bidegrees.
    NotBihomogeneous(String, String),
    MissingAssignment(String),
    Parse {
        offset: usize,
        message: String,
    },
    InvalidParameter(String),
    WrongColumnDegrees {
        row: usize,
        col: usize,
        expected: u32,
        found: String,
    },
    /// The maximal minors share a non-constant factor (or all vanish).
    HeightNotTwo(String),
    DegreeMismatch(String),
    CommonFactor(String),
    /// The linear part admits a forbidden zero block, so it cannot come from a height two ideal.
    HypothesisViolated(String),
    NotEligible(String),
    IndexOutOfRange(String),
    /// A Hilbert function that no pd-one module generated in a single degree can have.
    NoFit(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "modulus {p} is not a supported prime"),
            Error::FieldMismatch(a, b) => write!(f, "field mismatch: {a} vs {b}"),
            Error::RingMismatch(a, b) => {
                write!(f, "ring mismatch: {a} vs {b} T-variables")
            }
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::TooManyVariables(n) => write!(f, "{n} variables exceeds the supported maximum"),
            Error::ExponentOverflow => f.write_str("exponent overflow"),
            Error::ZeroPolynomial => f.write_str("zero polynomial has no bidegree"),
            Error::NotBihomogeneous(a, b) => {
                write!(f, "not bihomogeneous: monomials {a} and {b} have different bidegrees")
            }
            Error::MissingAssignment(v) => write!(f, "substitution has no image for {v}"),
            Error::Parse { offset, message } => write!(f, "parse error at offset {offset}: {message}"),
            Error::InvalidParameter(m) => write!(f, "invalid parameter: {m}"),
            Error::WrongColumnDegrees {
                row,
                col,
                expected,
                found,
            } => write!(
                f,
                "entry ({row},{col}) should be a form of degree {expected}, found {found}"
            ),
            Error::HeightNotTwo(g) => write!(f, "ideal of maximal minors does not have height two: gcd = {g}"),
            Error::DegreeMismatch(m) => write!(f, "degree mismatch: {m}"),
            Error::CommonFactor(g) => write!(f, "F1 and F2 share the common factor {g}"),
            Error::HypothesisViolated(m) => write!(f, "linear part has a forbidden zero block: {m}"),
            Error::NotEligible(m) => write!(f, "tuple is not eligible: {m}"),
            Error::IndexOutOfRange(m) => write!(f, "index out of range: {m}"),
            Error::NoFit(m) => write!(f, "no resolution fits the Hilbert function: {m}"),
        }
    }
}

impl core::error::Error for Error {}
