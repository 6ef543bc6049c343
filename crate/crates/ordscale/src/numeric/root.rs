//! Brent's method for bracketed scalar root finding.
//!
//! Inverse quadratic interpolation with a secant/bisection fallback; the
//! bracket never widens, so convergence is guaranteed for any continuous
//! function with a sign change.

use super::Tolerance;
use crate::error::{Error, Result};

/// Find `x` in `[lo, hi]` with `f(x) = 0`, given `f(lo)` and `f(hi)` of
/// opposite sign. Stops when the bracket width falls below
/// `max(abs_tol, rel_tol * |x|)` (plus machine slack) or `f(x)` hits zero.
pub fn find_root<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: Tolerance) -> Result<f64> {
    if !lo.is_finite() || !hi.is_finite() || !(lo < hi) {
        return Err(Error::InvalidInput(format!(
            "root bracket must be finite with lo < hi, got [{lo}, {hi}]"
        )));
    }
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a);
    let mut fb = f(b);
    if fa.is_nan() || fb.is_nan() {
        return Err(Error::InvalidInput(
            "function returned NaN at a bracket endpoint".into(),
        ));
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoBracket { lo, hi, f_lo: fa, f_hi: fb });
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..tol.max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs()
            + 0.5 * f64::max(tol.abs_tol, tol.rel_tol * b.abs());
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // Attempt inverse quadratic interpolation (secant when a == c).
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < f64::min(min1, min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
        if fb.is_nan() {
            return Err(Error::InvalidInput("function returned NaN during root search".into()));
        }
    }
    Err(Error::NoConvergence { what: "Brent root finding", limit: tol.max_iter })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::integrate;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn linear_root() {
        let x = find_root(|x| x - 0.5, 0.0, 1.0, tol()).unwrap();
        assert!((x - 0.5).abs() < 1e-10);
    }

    /// Shrinkage-bound equation c * m + ln(1-r)/r = 0 at c * m = 2: the
    /// residual at the returned root must vanish.
    #[test]
    fn log_shrinkage_equation() {
        let f = |r: f64| 2.0 + (1.0 - r).ln() / r;
        let r = find_root(f, 1e-12, 1.0 - 1e-12, tol()).unwrap();
        assert!(r > 0.0 && r < 1.0);
        assert!(f(r).abs() < 1e-8, "residual {}", f(r));
        // Bisection oracle on a coarse grid agrees.
        let mut bisect_lo = 0.5;
        let mut bisect_hi = 0.999;
        for _ in 0..60 {
            let m = 0.5 * (bisect_lo + bisect_hi);
            if f(m) > 0.0 {
                bisect_lo = m;
            } else {
                bisect_hi = m;
            }
        }
        assert!((r - bisect_lo).abs() < 1e-9);
    }

    /// E[2 (cZ - 1) Z] with Z ~ Gamma(5, 1) vanishes at c = E Z / E Z^2 = 1/6.
    #[test]
    fn moment_equation_via_quadrature() {
        let expectation = |c: f64| {
            integrate(
                move |t: f64| 2.0 * (c * t - 1.0) * t * t.powi(4) * (-t).exp(),
                0.0,
                f64::INFINITY,
                tol(),
            )
            .unwrap()
        };
        let c = find_root(expectation, 1e-3, 1.0, tol()).unwrap();
        assert!((c - 1.0 / 6.0).abs() < 1e-9, "got {c}");
    }

    #[test]
    fn missing_sign_change_is_reported() {
        match find_root(|x| x * x + 1.0, -1.0, 1.0, tol()) {
            Err(Error::NoBracket { .. }) => {}
            other => panic!("expected bracketing error, got {other:?}"),
        }
    }

    /// The returned point straddles the sign change of monotone functions.
    #[test]
    #[allow(clippy::type_complexity)]
    fn root_straddles_sign_change() {
        let funcs: [(fn(f64) -> f64, f64, f64); 3] = [
            (|x| x.exp() - 2.0, 0.0, 2.0),
            (|x| x.powi(3) - 0.2, 0.0, 1.0),
            (|x| (x * 1.7).tanh() - 0.4, 0.0, 1.0),
        ];
        for (f, lo, hi) in funcs {
            let x = find_root(f, lo, hi, tol()).unwrap();
            let delta = 10.0 * 1e-10;
            assert!(f(x - delta).signum() != f(x + delta).signum());
        }
    }

    #[test]
    fn endpoint_roots_returned_directly() {
        assert_eq!(find_root(|x| x, 0.0, 1.0, tol()).unwrap(), 0.0);
        assert_eq!(find_root(|x| x - 1.0, 0.0, 1.0, tol()).unwrap(), 1.0);
    }
}
