use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// `n < 3` gives parallel edges or self-loops.
    DegenerateSide { n: usize },
    ZeroDimension,
    TooManyCells { n: usize, d: usize, limit: usize },
    /// A construction or set needs a larger side length.
    SideTooSmall { n: usize, min: usize, what: &'static str },
    EvenSideRequired { n: usize },
    OddSideRequired { n: usize },
    InvalidThreshold { r: usize, min: usize, max: usize },
    OutOfRange { what: &'static str, value: usize, min: usize, max: usize },
    InvalidCoord,
    InvalidIndexTuple,
    ShapeMismatch,
    BadLength { expected: usize, found: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegenerateSide { n } => write!(f, "side length n = {n} is degenerate (need n >= 3)"),
            Error::ZeroDimension => write!(f, "dimension d must be at least 1"),
            Error::TooManyCells { n, d, limit } => {
                write!(f, "torus {n}^{d} exceeds the cell budget of {limit} vertices")
            }
            Error::SideTooSmall { n, min, what } => {
                write!(f, "{what} needs n >= {min}, got n = {n}")
            }
            Error::EvenSideRequired { n } => write!(f, "operation needs an even side length, got n = {n}"),
            Error::OddSideRequired { n } => write!(f, "operation needs an odd side length, got n = {n}"),
            Error::InvalidThreshold { r, min, max } => {
                write!(f, "threshold r = {r} outside [{min}, {max}]")
            }
            Error::OutOfRange { what, value, min, max } => {
                write!(f, "{what} = {value} outside [{min}, {max}]")
            }
            Error::InvalidCoord => write!(f, "coordinate has wrong arity or a component outside [1, n]"),
            Error::InvalidIndexTuple => write!(f, "index tuple must be strictly increasing within [1, d]"),
            Error::ShapeMismatch => write!(f, "vertex set belongs to a different torus"),
            Error::BadLength { expected, found } => {
                write!(f, "expected {expected} words of state, found {found}")
            }
        }
    }
}

impl core::error::Error for Error {}
