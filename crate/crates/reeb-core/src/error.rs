use alloc::string::String;
use core::fmt;

/// Failure of a library operation.
///
/// `Input` means the caller handed us something invalid. `Internal` means a
/// computed object failed one of its own consistency checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    Syntax(String),
    Input(String),
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Syntax(m) => write!(f, "syntax error: {m}"),
            Error::Input(m) => write!(f, "invalid input: {m}"),
            Error::Internal(m) => write!(f, "internal invariant violated: {m}"),
        }
    }
}

impl core::error::Error for Error {}

macro_rules! input_err {
    ($($t:tt)*) => { $crate::Error::Input(alloc::format!($($t)*)) };
}
macro_rules! internal_err {
    ($($t:tt)*) => { $crate::Error::Internal(alloc::format!($($t)*)) };
}
pub(crate) use input_err;
pub(crate) use internal_err;
