//! Estimation of the ordered scale parameters of two two-parameter
//! exponential populations from doubly type-II censored samples.
//!
//! Each censored sample reduces to its smallest observed order statistic and
//! a total-time-on-test statistic `v` with `v / sigma ~ Gamma(b - a, 1)`.
//! Under a bowl-shaped scale-invariant loss the best affine equivariant
//! estimator of either scale is `c0 * v`; when the scales are known to be
//! ordered it is inadmissible, and this crate implements the classical
//! catalogue of improvements for both the smaller and the larger scale:
//! truncated (Stein-type) estimators, restricted maximum likelihood and its
//! improvement, the boundary of the monotone (IERD) class (which is also
//! generalized Bayes), the Maruyama family, Strawderman-type shrinkage, and
//! a double-shrinkage combination for the larger scale.
//!
//! The [`risk`] module estimates frequentist risks by Monte Carlo with
//! common random numbers and deterministic parallel reduction, and emits
//! relative-risk-improvement tables as CSV. The [`cli`] module wraps
//! everything into a command-line tool, including reproduction of the
//! reference tables for the bundled jute-fiber data set.
//!
//! Special life-testing designs (complete samples, type-II censoring,
//! progressive type-II censoring, record values) map onto the same
//! statistic form via [`model::scheme_to_stats`] and reuse every estimator
//! unchanged.

#![forbid(unsafe_code)]
// `!(x > 0.0)`-style guards double as NaN checks throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod data;
mod error;
pub mod loss;
pub mod model;
pub mod numeric;
pub mod risk;
pub mod sigma1;
pub mod sigma2;

pub use error::{Error, Result};
