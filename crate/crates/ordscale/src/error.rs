//! Crate-wide error type.

use std::path::PathBuf;

/// Errors produced by the estimation library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed data or arguments (unsorted samples, empty files, bad grids).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Censoring-index violations (a > b, b > n, too few observed ranks).
    #[error("invalid censoring scheme: {0}")]
    InvalidScheme(String),

    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Root bracketing failed: no sign change over the interval.
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    /// An iterative numerical routine exhausted its iteration budget.
    #[error("{what} did not converge within {limit} iterations")]
    NoConvergence { what: &'static str, limit: usize },

    /// Operation not defined for the requested loss or target.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Inconsistent simulation or CLI configuration.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// I/O failure, with the offending path.
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for failures of the numerical machinery itself, as opposed to
    /// bad input or configuration. The CLI maps these to a distinct exit code.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoBracket { .. } | Error::NoConvergence { .. } | Error::Domain(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
