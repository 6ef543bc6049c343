//! Globally adaptive quadrature on a 20-point Gauss-Legendre base rule.
//!
//! An interval estimate is accepted when the rule applied to the whole
//! interval agrees with the sum over its two halves; otherwise the interval
//! is bisected with the error budget split between the halves. Infinite
//! upper limits are mapped to (0, 1) by the substitution `x = lo + u/(1-u)`.

use super::Tolerance;
use crate::error::{Error, Result};

/// Abscissae of the 20-point Gauss-Legendre rule on [-1, 1] (positive half).
#[allow(clippy::excessive_precision)]
const GL_NODES: [f64; 10] = [
    7.65265211334973383e-2,
    2.27785851141645096e-1,
    3.73706088715419549e-1,
    5.10867001950827126e-1,
    6.36053680726515025e-1,
    7.46331906460150796e-1,
    8.39116971822218782e-1,
    9.12234428251325835e-1,
    9.63971927277913809e-1,
    9.93128599185094885e-1,
];

#[allow(clippy::excessive_precision)]
const GL_WEIGHTS: [f64; 10] = [
    1.52753387130725782e-1,
    1.49172986472603658e-1,
    1.42096109318381875e-1,
    1.31688638449176526e-1,
    1.18194531961518245e-1,
    1.01930119817240261e-1,
    8.32767415767046715e-2,
    6.26720483341094425e-2,
    4.06014298003862170e-2,
    1.76140071391532732e-2,
];

/// Hard cap on subdivisions, so a pathological integrand fails fast with a
/// convergence error instead of looping.
const MAX_PANELS: usize = 100_000;

fn gl20<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for i in 0..10 {
        let dx = half * GL_NODES[i];
        acc += GL_WEIGHTS[i] * (f(mid + dx) + f(mid - dx));
    }
    acc * half
}

struct Adapt<'a, F> {
    f: &'a F,
    panels: usize,
    max_depth: usize,
}

impl<F: Fn(f64) -> f64> Adapt<'_, F> {
    fn run(&mut self, a: f64, b: f64, whole: f64, tol: f64, depth: usize) -> Result<f64> {
        let mid = 0.5 * (a + b);
        let left = gl20(self.f, a, mid);
        let right = gl20(self.f, mid, b);
        let better = left + right;
        if better.is_nan() {
            return Err(Error::InvalidInput(
                "integrand returned NaN inside the integration interval".into(),
            ));
        }
        let err = (whole - better).abs();
        if err <= tol {
            return Ok(better);
        }
        if depth >= self.max_depth {
            return Err(Error::NoConvergence {
                what: "adaptive quadrature",
                limit: self.max_depth,
            });
        }
        self.panels += 1;
        if self.panels > MAX_PANELS {
            return Err(Error::NoConvergence {
                what: "adaptive quadrature (panel budget)",
                limit: MAX_PANELS,
            });
        }
        let half_tol = 0.5 * tol;
        Ok(self.run(a, mid, left, half_tol, depth + 1)?
            + self.run(mid, b, right, half_tol, depth + 1)?)
    }
}

fn integrate_finite<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: Tolerance) -> Result<f64> {
    let rough = gl20(&f, lo, hi);
    if rough.is_nan() {
        return Err(Error::InvalidInput(
            "integrand returned NaN inside the integration interval".into(),
        ));
    }
    let budget = f64::max(tol.abs_tol, tol.rel_tol * rough.abs());
    let mut state = Adapt { f: &f, panels: 0, max_depth: tol.max_iter };
    state.run(lo, hi, rough, budget, 0)
}

/// Integrate `f` over `[lo, hi]` to within `max(abs_tol, rel_tol * |I|)`.
///
/// `hi` may be `f64::INFINITY` provided the integrand decays fast enough for
/// the `x = lo + u/(1-u)` substitution to leave an integrable function on
/// (0, 1); the exponential tails used throughout this crate qualify.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: Tolerance) -> Result<f64> {
    if lo.is_nan() || hi.is_nan() || lo.is_infinite() {
        return Err(Error::InvalidInput(format!(
            "bad integration interval [{lo}, {hi}]"
        )));
    }
    if hi == f64::INFINITY {
        // x = lo + u/(1-u), dx = du/(1-u)^2. Gauss nodes are interior, so
        // u = 1 is never evaluated.
        let g = move |u: f64| {
            let s = 1.0 - u;
            f(lo + u / s) / (s * s)
        };
        return integrate_finite(g, 0.0, 1.0, tol);
    }
    if !(lo < hi) {
        return Err(Error::InvalidInput(format!(
            "integration bounds must satisfy lo < hi, got [{lo}, {hi}]"
        )));
    }
    integrate_finite(f, lo, hi, tol)
}
