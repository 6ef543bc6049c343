//! Gamma, exponential, and normal variate generation.
//!
//! The algorithms are fixed so that a given generator state always yields
//! the same draw sequence: Box-Muller for the normal, inversion for the
//! exponential, and Marsaglia-Tsang squeeze-rejection for the gamma (with
//! the usual power boost for shape < 1).

use rand::Rng;

/// One standard normal draw (basic Box-Muller; the paired value is discarded
/// to keep the generator stateless between calls).
pub fn sample_std_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u1: f64 = rng.random();
        if u1 <= 0.0 {
            continue;
        }
        let u2: f64 = rng.random();
        let r = (-2.0 * u1.ln()).sqrt();
        return r * (2.0 * std::f64::consts::PI * u2).cos();
    }
}

/// One Exp(1) draw scaled by `scale`, by inversion.
pub fn sample_exponential<R: Rng + ?Sized>(scale: f64, rng: &mut R) -> f64 {
    assert!(scale > 0.0, "exponential scale must be positive, got {scale}");
    let u: f64 = rng.random();
    -scale * (1.0 - u).ln()
}

/// One Gamma(shape, scale) draw.
pub fn sample_gamma<R: Rng + ?Sized>(shape: f64, scale: f64, rng: &mut R) -> f64 {
    assert!(shape > 0.0, "gamma shape must be positive, got {shape}");
    assert!(scale > 0.0, "gamma scale must be positive, got {scale}");
    if shape < 1.0 {
        // Gamma(a) = Gamma(a + 1) * U^{1/a}
        let boost = sample_gamma(shape + 1.0, 1.0, rng);
        let u: f64 = rng.random();
        return scale * boost * u.powf(1.0 / shape);
    }
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let x = sample_std_normal(rng);
        let t = 1.0 + c * x;
        if t <= 0.0 {
            continue;
        }
        let v = t * t * t;
        let u: f64 = rng.random();
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 {
            return scale * d * v;
        }
        if u > 0.0 && u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return scale * d * v;
        }
    }
}
