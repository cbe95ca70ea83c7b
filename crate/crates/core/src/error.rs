use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands live in different polynomial rings.
    RingMismatch,
    /// Field tags of two scalars or rings disagree.
    FieldMismatch,
    InvalidField(String),
    UnknownVariable(String),
    UnmappedVariable(String),
    DegreeMismatch {
        variable: String,
        expected: u32,
        found: u32,
    },
    NonHomogeneous(String),
    NotDivisible,
    DivisionByZero,
    NotSquare {
        rows: usize,
        cols: usize,
    },
    /// An internal identity that must hold exactly did not.
    Certificate(String),
    Parse {
        offset: usize,
        message: String,
    },
    /// Input data violates a structural invariant.
    Invalid(String),
    /// A hypothesis required by an operation is not satisfied.
    Hypothesis(String),
    Decomposition(String),
    DegreeCap {
        degree: u32,
        cap: u32,
    },
    UnknownGenerator(String),
    UnknownLabel(String),
    Signature(String),
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RingMismatch => write!(f, "operands belong to different rings"),
            Error::FieldMismatch => write!(f, "operands belong to different fields"),
            Error::InvalidField(m) => write!(f, "invalid field: {m}"),
            Error::UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            Error::UnmappedVariable(v) => write!(f, "variable `{v}` has no image"),
            Error::DegreeMismatch { variable, expected, found } => {
                write!(f, "degree mismatch for `{variable}`: expected {expected}, found {found}")
            }
            Error::NonHomogeneous(m) => write!(f, "not homogeneous: {m}"),
            Error::NotDivisible => write!(f, "exact division failed: divisor does not divide"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            Error::Certificate(m) => write!(f, "certificate failure: {m}"),
            Error::Parse { offset, message } => {
                write!(f, "syntax error at offset {offset}: {message}")
            }
            Error::Invalid(m) => write!(f, "invalid input: {m}"),
            Error::Hypothesis(m) => write!(f, "hypothesis violated: {m}"),
            Error::Decomposition(m) => write!(f, "decomposition failed: {m}"),
            Error::DegreeCap { degree, cap } => {
                write!(f, "degree {degree} exceeds the degree cap {cap}")
            }
            Error::UnknownGenerator(g) => write!(f, "unknown generator `{g}`"),
            Error::UnknownLabel(l) => write!(f, "unknown label `{l}`"),
            Error::Signature(m) => write!(f, "signature mismatch: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
        }
    }
}

impl core::error::Error for Error {}
