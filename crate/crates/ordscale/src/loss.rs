//! Bowl-shaped scale-invariant loss functions and their solved constants.
//!
//! A loss `L(t)` here is nonnegative, zero at `t = 1`, decreasing below and
//! increasing above. Three named losses get closed-form constants:
//!
//! * quadratic `(t - 1)^2`
//! * entropy `t - ln t - 1`
//! * symmetric `t + 1/t - 2`
//!
//! Custom losses go through the generic quadrature + root-finding path; the
//! named losses short-circuit to the closed forms, and both routes are
//! cross-checked in the tests.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numeric::{find_root, integrate, Tolerance};

type LossFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// User-supplied bowl-shaped loss with its derivative. No automatic
/// differentiation: the derivative is part of the contract.
#[derive(Clone)]
pub struct CustomLoss {
    value: LossFn,
    deriv: LossFn,
}

impl CustomLoss {
    /// Wrap a loss and its derivative, spot-checking bowl-shape on a grid:
    /// `L(1) = 0`, `L >= 0`, non-increasing left of 1 and non-decreasing
    /// right of 1.
    pub fn new(
        value: impl Fn(f64) -> f64 + Send + Sync + 'static,
        deriv: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if value(1.0).abs() > 1e-9 {
            return Err(Error::InvalidInput(format!(
                "custom loss must vanish at t = 1, got L(1) = {}",
                value(1.0)
            )));
        }
        let grid = [0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0, 1.1, 1.5, 2.0, 4.0, 10.0];
        let mut prev = f64::INFINITY;
        for &t in &grid {
            let v = value(t);
            if !v.is_finite() || v < -1e-12 {
                return Err(Error::InvalidInput(format!(
                    "custom loss must be finite and nonnegative, got L({t}) = {v}"
                )));
            }
            if t <= 1.0 && v > prev + 1e-9 {
                return Err(Error::InvalidInput(format!(
                    "custom loss must be non-increasing on (0, 1], violated at t = {t}"
                )));
            }
            if t > 1.0 && v + 1e-9 < prev {
                return Err(Error::InvalidInput(format!(
                    "custom loss must be non-decreasing on [1, inf), violated at t = {t}"
                )));
            }
            prev = v;
        }
        Ok(Self { value: Arc::new(value), deriv: Arc::new(deriv) })
    }
}

/// The loss function driving an estimation problem.
#[derive(Clone)]
pub enum LossKind {
    Quadratic,
    Entropy,
    Symmetric,
    Custom(CustomLoss),
}

impl std::fmt::Debug for LossKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LossKind::Quadratic => "Quadratic",
            LossKind::Entropy => "Entropy",
            LossKind::Symmetric => "Symmetric",
            LossKind::Custom(_) => "Custom",
        })
    }
}

fn check_arg(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("loss argument must be positive, got {t}")));
    }
    Ok(())
}

impl LossKind {
    /// L(t) for t > 0.
    pub fn value(&self, t: f64) -> Result<f64> {
        check_arg(t)?;
        Ok(match self {
            LossKind::Quadratic => (t - 1.0) * (t - 1.0),
            LossKind::Entropy => t - t.ln() - 1.0,
            LossKind::Symmetric => t + 1.0 / t - 2.0,
            LossKind::Custom(c) => (c.value)(t),
        })
    }

    /// L'(t) for t > 0.
    pub fn deriv(&self, t: f64) -> Result<f64> {
        check_arg(t)?;
        Ok(match self {
            LossKind::Quadratic => 2.0 * (t - 1.0),
            LossKind::Entropy => 1.0 - 1.0 / t,
            LossKind::Symmetric => 1.0 - 1.0 / (t * t),
            LossKind::Custom(c) => (c.deriv)(t),
        })
    }

    /// The constant `c0` of the best affine equivariant estimator `c0 * v`:
    /// the unique solution of `E[L'(c V) V] = 0` with `V ~ Gamma(m, 1)`.
    pub fn baee_constant(&self, m: usize) -> Result<f64> {
        if m < 2 {
            return Err(Error::Domain(format!(
                "baee constant needs shape m >= 2, got {m}"
            )));
        }
        let mf = m as f64;
        Ok(match self {
            LossKind::Quadratic => 1.0 / (mf + 1.0),
            LossKind::Entropy => 1.0 / mf,
            LossKind::Symmetric => 1.0 / (mf * (mf - 1.0)).sqrt(),
            LossKind::Custom(_) => solve_weighted_deriv_root(self, mf + 1.0)?,
        })
    }

    /// The truncation constant `beta` solving `E[L'(beta Z)] = 0` with
    /// `Z ~ Gamma(k, 1)`. Finite moments demand `k >= 2` for the entropy
    /// loss and `k >= 3` for the symmetric loss.
    pub fn stein_constant(&self, k: usize) -> Result<f64> {
        let kf = k as f64;
        Ok(match self {
            LossKind::Quadratic => {
                if k < 1 {
                    return Err(Error::Domain("stein constant needs k >= 1".into()));
                }
                1.0 / kf
            }
            LossKind::Entropy => {
                if k < 2 {
                    return Err(Error::Domain(
                        "stein constant under entropy loss needs k >= 2".into(),
                    ));
                }
                1.0 / (kf - 1.0)
            }
            LossKind::Symmetric => {
                if k < 3 {
                    return Err(Error::Domain(
                        "stein constant under symmetric loss needs k >= 3".into(),
                    ));
                }
                1.0 / ((kf - 1.0) * (kf - 2.0)).sqrt()
            }
            LossKind::Custom(_) => {
                if k < 1 {
                    return Err(Error::Domain("stein constant needs k >= 1".into()));
                }
                solve_weighted_deriv_root(self, kf)?
            }
        })
    }
}

/// Root of `c -> integral of L'(c t) t^{p-1} e^{-t} dt` over (0, inf).
///
/// Covers both solved constants: the baee equation is the `p = m + 1` case
/// (one extra power of `t` from the `V` factor) and the truncation equation
/// is `p = k`. The weight is evaluated in log space and rescaled by its peak
/// so large shapes stay inside f64 range.
fn solve_weighted_deriv_root(loss: &LossKind, p: f64) -> Result<f64> {
    let tol = Tolerance::default();
    let power = p - 1.0;
    let peak = if power > 0.0 { power * power.ln() - power } else { 0.0 };
    let loss = loss.clone();
    let residual = move |c: f64| -> Result<f64> {
        let loss = loss.clone();
        integrate(
            move |t: f64| {
                let w = (power * t.ln() - t - peak).exp();
                match loss.deriv(c * t) {
                    Ok(d) => d * w,
                    Err(_) => f64::NAN,
                }
            },
            0.0,
            f64::INFINITY,
            tol,
        )
    };

    // The root sits near 1/p for any bowl-shaped loss; expand the bracket
    // geometrically until the residual changes sign.
    let mut lo = 0.1 / p;
    let mut hi = 4.0 / p;
    let mut f_lo = residual(lo)?;
    let mut tries = 0;
    while f_lo > 0.0 {
        lo *= 0.25;
        f_lo = residual(lo)?;
        tries += 1;
        if tries > 40 {
            return Err(Error::NoBracket { lo, hi, f_lo, f_hi: residual(hi)? });
        }
    }
    let mut f_hi = residual(hi)?;
    tries = 0;
    while f_hi < 0.0 {
        hi *= 2.0;
        f_hi = residual(hi)?;
        tries += 1;
        if tries > 40 {
            return Err(Error::NoBracket { lo, hi, f_lo, f_hi });
        }
    }
    find_root(
        |c| residual(c).unwrap_or(f64::NAN),
        lo,
        hi,
        tol,
    )
}
