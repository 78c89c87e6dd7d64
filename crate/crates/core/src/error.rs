use core::fmt;

/// Errors raised by set construction, the solver and the closed-form constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A set would need members beyond the configured universe cap.
    Capacity { requested: usize, cap: usize },
    /// A member lies outside the range an operation requires.
    OutOfRange { value: usize, bound: usize },
    /// Malformed set literal; `token` is the zero-based comma-separated field.
    Literal { token: usize, reason: &'static str },
    /// A position profile violates its invariants.
    InvalidProfile(&'static str),
    /// An operation was called outside its domain.
    Precondition(&'static str),
    /// Too many free positions to enumerate every assignment.
    EnumerationGuard { free: usize, limit: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Capacity { requested, cap } => {
                write!(f, "value {requested} exceeds the universe cap {cap}")
            }
            Error::OutOfRange { value, bound } => {
                write!(f, "member {value} lies outside [0, {bound}]")
            }
            Error::Literal { token, reason } => {
                write!(f, "invalid set literal at field {token}: {reason}")
            }
            Error::InvalidProfile(why) => write!(f, "invalid position profile: {why}"),
            Error::Precondition(why) => write!(f, "precondition violated: {why}"),
            Error::EnumerationGuard { free, limit } => write!(
                f,
                "{free} free positions exceed the enumeration limit of {limit}"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
