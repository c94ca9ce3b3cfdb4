//! Error type shared by every module.

use alloc::string::String;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Malformed input: wrong sizes, unknown names, unparsable text.
    #[error("usage error: {0}")]
    Usage(String),
    /// A documented precondition does not hold for the given data.
    #[error("domain error: {0}")]
    Domain(String),
    /// The operation is not available for this cone model.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A numerical routine failed to reach its tolerance.
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// The characteristic polynomial has a root that is not real.
    #[error("not hyperbolic at this point (imaginary residual {residual:.3e})")]
    NotHyperbolic {
        /// Largest imaginary part left after clustering.
        residual: f64,
    },
}

impl Error {
    /// Short machine-readable kind, used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Usage(_) => "usage",
            Error::Domain(_) => "domain",
            Error::Unsupported(_) => "unsupported",
            Error::Numerical(_) => "numerical-failure",
            Error::NotHyperbolic { .. } => "not-hyperbolic",
        }
    }
}

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Builds an [`Error::Usage`] from format arguments.
macro_rules! usage {
    ($($t:tt)*) => { $crate::error::Error::Usage(alloc::format!($($t)*)) };
}
/// Builds an [`Error::Domain`] from format arguments.
macro_rules! domain {
    ($($t:tt)*) => { $crate::error::Error::Domain(alloc::format!($($t)*)) };
}
/// Builds an [`Error::Unsupported`] from format arguments.
macro_rules! unsupported {
    ($($t:tt)*) => { $crate::error::Error::Unsupported(alloc::format!($($t)*)) };
}
/// Builds an [`Error::Numerical`] from format arguments.
macro_rules! numerical {
    ($($t:tt)*) => { $crate::error::Error::Numerical(alloc::format!($($t)*)) };
}
pub(crate) use {domain, numerical, unsupported, usage};
