use alloc::string::String;
use core::fmt;

/// Errors surfaced by the kernel, the series engine and the analyzer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    /// The message names the violated precondition.
    InvalidDomain(String),
    /// `ln` of zero or of a negative number.
    NonPositiveArgument(String),
    /// A series hit its term cap before reaching the requested accuracy.
    NoConvergence {
        /// Which series gave up.
        series: String,
        /// The term cap that was exhausted.
        cap: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDomain(msg) => write!(f, "invalid domain: {msg}"),
            Error::NonPositiveArgument(msg) => {
                write!(f, "logarithm of a non-positive number: {msg}")
            }
            Error::NoConvergence { series, cap } => {
                write!(f, "{series} did not converge within {cap} terms")
            }
        }
    }
}

impl core::error::Error for Error {}
