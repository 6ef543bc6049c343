//! Foundation numerics: adaptive quadrature, bracketed root finding,
//! log-gamma, the regularized incomplete gamma function, and gamma sampling.
//!
//! Everything here is pure given its inputs; random sampling takes a
//! caller-owned generator, so concurrent use with distinct generators is safe.

mod quad;
mod root;
mod sample;
mod special;

pub use quad::integrate;
pub use root::find_root;
pub use sample::{sample_exponential, sample_gamma, sample_std_normal};
pub use special::{log_gamma, lower_reg_gamma, upper_reg_gamma};

use crate::error::{Error, Result};

/// Convergence targets shared by the quadrature and root-finding routines.
///
/// An iterative routine stops once its error estimate drops below
/// `max(abs_tol, rel_tol * |result|)`, and fails with
/// [`Error::NoConvergence`] if that does not happen within `max_iter` steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_iter: usize,
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64, max_iter: usize) -> Result<Self> {
        if !(abs_tol > 0.0) || !abs_tol.is_finite() {
            return Err(Error::InvalidInput(format!(
                "abs_tol must be a positive finite real, got {abs_tol}"
            )));
        }
        if !(rel_tol > 0.0) || !rel_tol.is_finite() {
            return Err(Error::InvalidInput(format!(
                "rel_tol must be a positive finite real, got {rel_tol}"
            )));
        }
        if max_iter == 0 {
            return Err(Error::InvalidInput("max_iter must be at least 1".into()));
        }
        Ok(Self { abs_tol, rel_tol, max_iter })
    }
}

/// Internal accuracy used throughout: table reproduction to two decimals
/// needs at least six significant digits, so we keep ten in hand.
impl Default for Tolerance {
    fn default() -> Self {
        Self { abs_tol: 1e-10, rel_tol: 1e-10, max_iter: 200 }
    }
}
