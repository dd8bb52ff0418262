use alloc::string::String;
use core::fmt;

/// Error type shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An index fell outside a table's valid range.
    OutOfRange { what: &'static str, value: u64, limit: u64 },
    /// A caller-supplied argument was rejected.
    InvalidArgument(String),
    /// Two tables that must share a limit did not.
    LengthMismatch { left: u64, right: u64 },
    /// Checked 64-bit integer arithmetic overflowed.
    Overflow(&'static str),
    /// A self-checked identity failed; the library's own state is suspect.
    InvariantViolation(String),
    /// A numeric operation was evaluated outside its domain of validity.
    Domain(String),
    /// A theorem-mode precondition did not hold; names the hypothesis.
    Precondition(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OutOfRange { what, value, limit } => {
                write!(f, "{what} = {value} is outside the valid range 1..={limit}")
            }
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::LengthMismatch { left, right } => {
                write!(f, "table limits differ: {left} vs {right}")
            }
            Error::Overflow(what) => write!(f, "64-bit overflow in {what}"),
            Error::InvariantViolation(msg) => write!(f, "internal invariant violated: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Precondition(hyp) => write!(f, "hypothesis not satisfied: {hyp}"),
        }
    }
}
