use alloc::string::String;
use core::fmt;

/// Errors raised by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An operation was applied outside its domain (negative valuation, non-unit, ...).
    Domain(String),
    /// A polynomial does not split over the working field.
    RootsOutsideField { degree_hint: u32 },
    /// A windowed computation did not stabilize.
    NotStabilized(String),
    /// An exhaustive search would exceed its configured bound.
    BoundExceeded { size: u128, bound: u128 },
    /// Incompatible operands (different rings, ambients, dimensions).
    Mismatch(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::RootsOutsideField { degree_hint } => write!(
                f,
                "roots not in certified field; try an extension of degree {degree_hint}"
            ),
            Error::NotStabilized(m) => write!(f, "not stabilized: {m}"),
            Error::BoundExceeded { size, bound } => {
                write!(f, "search space {size} exceeds bound {bound}")
            }
            Error::Mismatch(m) => write!(f, "mismatch: {m}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
