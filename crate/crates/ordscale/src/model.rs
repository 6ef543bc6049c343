//! Doubly type-II censored exponential samples and their sufficient
//! statistics, plus adapters that map related life-testing designs
//! (complete samples, type-II censoring, progressive type-II censoring,
//! record values) onto the same statistic form.
//!
//! For a sample of size `n` with observed ranks `a..=b`, the reduction keeps
//! the smallest observed order statistic `x_a` and the normalized-spacings
//! statistic
//!
//! ```text
//! v = sum_{j=a+1}^{b} (n - j + 1) (x_(j) - x_(j-1))
//! ```
//!
//! for which `v / sigma ~ Gamma(b - a, 1)`. Each scheme also carries the
//! coefficient `kappa` scaling the minimum observation (n - a + 1 for the
//! doubly censored design), which downstream estimators consume as-is so
//! the special designs reuse the same estimator layer.

use std::io::BufRead;
use std::path::Path;

use rand::Rng;

use crate::error::{Error, Result};
use crate::numeric::{sample_exponential, sample_gamma};

/// Censoring design reduced to what the estimators need: the observed rank
/// window inside a sample of size `n` and the minimum-observation scale
/// coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CensoringScheme {
    n: usize,
    a: usize,
    b: usize,
    kappa: f64,
}

impl CensoringScheme {
    /// Doubly type-II censoring: ranks `a..=b` of an `n`-sample observed,
    /// `kappa = n - a + 1`.
    pub fn doubly_type_ii(n: usize, a: usize, b: usize) -> Result<Self> {
        Self::with_kappa(n, a, b, (n as f64) - (a as f64) + 1.0)
    }

    /// A scheme with an explicit minimum-observation coefficient; used by the
    /// special sampling designs where it differs from `n - a + 1`.
    pub fn with_kappa(n: usize, a: usize, b: usize, kappa: f64) -> Result<Self> {
        if a < 1 || a > b || b > n {
            return Err(Error::InvalidScheme(format!(
                "need 1 <= a <= b <= n, got a = {a}, b = {b}, n = {n}"
            )));
        }
        if b - a < 2 {
            // b - a >= 2 keeps every estimator constant defined, including
            // the symmetric-loss 1/sqrt((b-a)(b-a-1)).
            return Err(Error::InvalidScheme(format!(
                "need b - a >= 2 observed spacings, got a = {a}, b = {b}"
            )));
        }
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(Error::InvalidScheme(format!("kappa must be positive, got {kappa}")));
        }
        Ok(Self { n, a, b, kappa })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Gamma shape of `v / sigma`.
    pub fn m(&self) -> usize {
        self.b - self.a
    }
}

/// Sufficient statistics of one censored sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SufficientStats {
    x_a: f64,
    v: f64,
    scheme: CensoringScheme,
}

impl SufficientStats {
    pub fn new(x_a: f64, v: f64, scheme: CensoringScheme) -> Result<Self> {
        if !x_a.is_finite() {
            return Err(Error::InvalidInput(format!("x_a must be finite, got {x_a}")));
        }
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::InvalidInput(format!(
                "total-time-on-test statistic must be positive, got {v}"
            )));
        }
        Ok(Self { x_a, v, scheme })
    }

    /// Smallest observed order statistic.
    pub fn x_a(&self) -> f64 {
        self.x_a
    }

    /// Total-time-on-test statistic; `v / sigma ~ Gamma(m, 1)`.
    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn scheme(&self) -> &CensoringScheme {
        &self.scheme
    }

    pub fn m(&self) -> usize {
        self.scheme.m()
    }

    pub fn kappa(&self) -> f64 {
        self.scheme.kappa()
    }
}

/// Statistics of both populations, population 1 carrying the smaller scale
/// under the order restriction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatsPair {
    pop1: SufficientStats,
    pop2: SufficientStats,
}

impl StatsPair {
    pub fn new(pop1: SufficientStats, pop2: SufficientStats) -> Self {
        Self { pop1, pop2 }
    }

    pub fn pop1(&self) -> &SufficientStats {
        &self.pop1
    }

    pub fn pop2(&self) -> &SufficientStats {
        &self.pop2
    }
}

/// Location and scale of one shifted-exponential population.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopulationParams {
    pub mu: f64,
    pub sigma: f64,
}

impl PopulationParams {
    pub fn new(mu: f64, sigma: f64) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::InvalidInput(format!("mu must be finite, got {mu}")));
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::InvalidInput(format!("sigma must be positive, got {sigma}")));
        }
        Ok(Self { mu, sigma })
    }
}

/// Sampling designs the estimator layer understands.
#[derive(Debug, Clone, PartialEq)]
pub enum SchemeDescriptor {
    /// Ranks `a..=b` of an `n`-sample.
    DoublyTypeII { n: usize, a: usize, b: usize },
    /// Complete sample of size `n` (ranks 1..=n).
    Iid { n: usize },
    /// First `observed` order statistics of a sample of size `total`.
    TypeII { total: usize, observed: usize },
    /// Progressive type-II censoring: `removals[j]` surviving units withdrawn
    /// at the (j+1)-th failure; the initial batch size is
    /// `removals.len() + sum(removals)`.
    ProgressiveTypeII { removals: Vec<usize> },
    /// The first `count` upper record values of an i.i.d. sequence.
    Records { count: usize },
}

/// Reduce a sorted sample to its sufficient statistics for the doubly
/// type-II design with observed ranks `a..=b` (1-based).
pub fn sufficient_stats(sorted_sample: &[f64], a: usize, b: usize) -> Result<SufficientStats> {
    let n = sorted_sample.len();
    let scheme = CensoringScheme::doubly_type_ii(n, a, b)?;
    if sorted_sample.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidInput("sample must be sorted ascending".into()));
    }
    let mut v = 0.0;
    for j in (a + 1)..=b {
        let weight = (n - j + 1) as f64;
        v += weight * (sorted_sample[j - 1] - sorted_sample[j - 2]);
    }
    SufficientStats::new(sorted_sample[a - 1], v, scheme)
}

/// Simulate the statistics of one population by drawing the full `n`-sample,
/// sorting, and reducing.
pub fn simulate_stats<R: Rng + ?Sized>(
    scheme: &CensoringScheme,
    params: &PopulationParams,
    rng: &mut R,
) -> SufficientStats {
    let mut sample: Vec<f64> = (0..scheme.n)
        .map(|_| params.mu + sample_exponential(params.sigma, rng))
        .collect();
    sample.sort_by(|x, y| x.partial_cmp(y).expect("exponential draws are never NaN"));
    sufficient_stats(&sample, scheme.a, scheme.b)
        .expect("simulated sample is sorted and the scheme was validated")
}

/// Simulate the statistics directly from their sampling distributions:
/// `v ~ Gamma(b - a, sigma)` and `x_a` from the order-statistic marginal
/// via its representation as a weighted sum of independent exponentials,
/// `x_a = mu + sigma * sum_{j=1}^{a} E_j / (n - j + 1)`.
pub fn simulate_stats_direct<R: Rng + ?Sized>(
    scheme: &CensoringScheme,
    params: &PopulationParams,
    rng: &mut R,
) -> SufficientStats {
    let v = sample_gamma(scheme.m() as f64, params.sigma, rng);
    let mut x_a = params.mu;
    for j in 1..=scheme.a {
        let weight = (scheme.n - j + 1) as f64;
        x_a += sample_exponential(params.sigma, rng) / weight;
    }
    SufficientStats::new(x_a, v, *scheme).expect("gamma draw is positive")
}

/// Map a raw data set under one of the special designs onto sufficient
/// statistics with the effective shape `m` and coefficient `kappa`.
pub fn scheme_to_stats(desc: &SchemeDescriptor, raw_data: &[f64]) -> Result<SufficientStats> {
    match desc {
        SchemeDescriptor::DoublyTypeII { n, a, b } => {
            if raw_data.len() != b - a + 1 {
                return Err(Error::InvalidInput(format!(
                    "doubly type-II with ranks {a}..={b} expects {} observations, got {}",
                    b - a + 1,
                    raw_data.len()
                )));
            }
            let _ = n;
            Err(Error::InvalidInput(
                "doubly type-II data must be reduced with sufficient_stats on the full \
                 sorted sample"
                    .into(),
            ))
        }
        SchemeDescriptor::Iid { n } => {
            if raw_data.len() != *n {
                return Err(Error::InvalidInput(format!(
                    "i.i.d. scheme expects {n} observations, got {}",
                    raw_data.len()
                )));
            }
            let sorted = sorted_copy(raw_data)?;
            sufficient_stats(&sorted, 1, *n)
        }
        SchemeDescriptor::TypeII { total, observed } => {
            let (total, observed) = (*total, *observed);
            if observed > total {
                return Err(Error::InvalidScheme(format!(
                    "type-II scheme needs observed <= total, got {observed} > {total}"
                )));
            }
            if raw_data.len() != observed {
                return Err(Error::InvalidInput(format!(
                    "type-II scheme expects the {observed} smallest observations, got {}",
                    raw_data.len()
                )));
            }
            if observed < 3 {
                return Err(Error::InvalidScheme(
                    "type-II scheme needs at least 3 observed failures".into(),
                ));
            }
            // Equivalent to the doubly censored design with a = 1, b = observed:
            // v = sum of observed + (total - observed) * largest - total * smallest.
            let sorted = sorted_copy(raw_data)?;
            let sum: f64 = sorted.iter().sum();
            let v = sum + (total - observed) as f64 * sorted[observed - 1]
                - total as f64 * sorted[0];
            let scheme = CensoringScheme::with_kappa(total, 1, observed, total as f64)?;
            SufficientStats::new(sorted[0], v, scheme)
        }
        SchemeDescriptor::ProgressiveTypeII { removals } => {
            let m_obs = removals.len();
            if m_obs < 3 {
                return Err(Error::InvalidScheme(
                    "progressive scheme needs at least 3 observed failures".into(),
                ));
            }
            let n: usize = m_obs + removals.iter().sum::<usize>();
            if raw_data.len() != m_obs {
                return Err(Error::InvalidInput(format!(
                    "progressive scheme with {m_obs} stages expects {m_obs} failure times, \
                     got {}",
                    raw_data.len()
                )));
            }
            let sorted = sorted_copy(raw_data)?;
            // v = sum (R_j + 1) x_(j) - n * x_(1), so v / sigma ~ Gamma(m - 1, 1).
            let mut v = 0.0;
            for (j, &r) in removals.iter().enumerate() {
                v += (r as f64 + 1.0) * sorted[j];
            }
            v -= n as f64 * sorted[0];
            let scheme = CensoringScheme::with_kappa(n, 1, m_obs, n as f64)?;
            SufficientStats::new(sorted[0], v, scheme)
        }
        SchemeDescriptor::Records { count } => {
            let k = *count;
            if k < 3 {
                return Err(Error::InvalidScheme(
                    "record scheme needs at least 3 records".into(),
                ));
            }
            if raw_data.len() != k {
                return Err(Error::InvalidInput(format!(
                    "record scheme expects {k} record values, got {}",
                    raw_data.len()
                )));
            }
            if raw_data.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidInput(
                    "record values must be strictly increasing".into(),
                ));
            }
            let v = raw_data[k - 1] - raw_data[0];
            let scheme = CensoringScheme::with_kappa(k, 1, k, 1.0)?;
            SufficientStats::new(raw_data[0], v, scheme)
        }
    }
}

/// Simulate raw data under a special design and reduce it, for the
/// distributional checks and the simulation front end.
pub fn simulate_scheme<R: Rng + ?Sized>(
    desc: &SchemeDescriptor,
    params: &PopulationParams,
    rng: &mut R,
) -> Result<SufficientStats> {
    match desc {
        SchemeDescriptor::DoublyTypeII { n, a, b } => {
            let scheme = CensoringScheme::doubly_type_ii(*n, *a, *b)?;
            Ok(simulate_stats(&scheme, params, rng))
        }
        SchemeDescriptor::Iid { n } => {
            let draws = draw_sample(*n, params, rng);
            scheme_to_stats(desc, &draws)
        }
        SchemeDescriptor::TypeII { total, observed } => {
            let mut draws = draw_sample(*total, params, rng);
            draws.sort_by(|x, y| x.partial_cmp(y).unwrap());
            draws.truncate(*observed);
            scheme_to_stats(desc, &draws)
        }
        SchemeDescriptor::ProgressiveTypeII { removals } => {
            // Failure spacings: with n_j units at risk before the (j+1)-th
            // failure, the gap is Exp(sigma / n_j).
            let m_obs = removals.len();
            let n = m_obs + removals.iter().sum::<usize>();
            let mut at_risk = n;
            let mut t = params.mu;
            let mut failures = Vec::with_capacity(m_obs);
            for &r in removals {
                t += sample_exponential(params.sigma / at_risk as f64, rng);
                failures.push(t);
                at_risk -= 1 + r;
            }
            scheme_to_stats(desc, &failures)
        }
        SchemeDescriptor::Records { count } => {
            // Record increments of an exponential sequence are themselves
            // exponential, by lack of memory.
            let mut t = params.mu + sample_exponential(params.sigma, rng);
            let mut records = Vec::with_capacity(*count);
            records.push(t);
            for _ in 1..*count {
                t += sample_exponential(params.sigma, rng);
                records.push(t);
            }
            scheme_to_stats(desc, &records)
        }
    }
}

fn draw_sample<R: Rng + ?Sized>(n: usize, params: &PopulationParams, rng: &mut R) -> Vec<f64> {
    (0..n).map(|_| params.mu + sample_exponential(params.sigma, rng)).collect()
}

fn sorted_copy(data: &[f64]) -> Result<Vec<f64>> {
    if data.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("observations must be finite".into()));
    }
    let mut out = data.to_vec();
    out.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(out)
}

/// Read one observation per line, ASCII decimal; blank lines are skipped and
/// the result is sorted ascending.
pub fn read_observations(path: &Path) -> Result<Vec<f64>> {
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let reader = std::io::BufReader::new(file);
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let value: f64 = trimmed.parse().map_err(|_| {
            Error::InvalidInput(format!(
                "{}:{}: not a decimal number: {trimmed:?}",
                path.display(),
                idx + 1
            ))
        })?;
        if !value.is_finite() {
            return Err(Error::InvalidInput(format!(
                "{}:{}: observation must be finite",
                path.display(),
                idx + 1
            )));
        }
        out.push(value);
    }
    if out.is_empty() {
        return Err(Error::InvalidInput(format!(
            "{}: no observations found",
            path.display()
        )));
    }
    out.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn scheme_invariants_enforced() {
        assert!(CensoringScheme::doubly_type_ii(10, 0, 5).is_err());
        assert!(CensoringScheme::doubly_type_ii(10, 3, 2).is_err());
        assert!(CensoringScheme::doubly_type_ii(10, 1, 11).is_err());
        assert!(CensoringScheme::doubly_type_ii(10, 4, 5).is_err()); // b - a < 2
        let s = CensoringScheme::doubly_type_ii(10, 2, 9).unwrap();
        assert_eq!(s.m(), 7);
        assert_eq!(s.kappa(), 9.0);
    }

    #[test]
    fn jute_gauge20_total_time_on_test() {
        let mut sample = data::JUTE_GAUGE20.to_vec();
        sample.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let s = sufficient_stats(&sample, 1, 30).unwrap();
        assert!((s.v() - 9119.70).abs() < 5e-3, "v = {}", s.v());
        assert!((s.v() / 30.0 - 303.99).abs() < 5e-3);
        assert_eq!(s.x_a(), 36.75);
    }

    #[test]
    fn tiny_sample_by_hand() {
        let s = sufficient_stats(&[1.0, 2.0, 3.0], 1, 3).unwrap();
        // 2 * (2 - 1) + 1 * (3 - 2)
        assert_eq!(s.v(), 3.0);
        assert_eq!(s.x_a(), 1.0);
        assert_eq!(s.m(), 2);
    }

    #[test]
    fn constant_gap_matches_direct_summation() {
        let n = 12;
        let gap = 0.75;
        let sample: Vec<f64> = (0..n).map(|i| 5.0 + gap * i as f64).collect();
        let (a, b) = (1, 3);
        let s = sufficient_stats(&sample, a, b).unwrap();
        let mut oracle = 0.0;
        for j in (a + 1)..=b {
            oracle += (n - j + 1) as f64 * gap;
        }
        assert!((s.v() - oracle).abs() < 1e-12);
    }

    #[test]
    fn unsorted_input_rejected() {
        let err = sufficient_stats(&[2.0, 1.0, 3.0], 1, 3).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn simulated_mean_matches_gamma_shape() {
        let scheme = CensoringScheme::doubly_type_ii(10, 1, 10).unwrap();
        let params = PopulationParams::new(0.0, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 100_000;
        let vs: Vec<f64> = (0..n).map(|_| simulate_stats(&scheme, &params, &mut rng).v()).collect();
        let mean = vs.iter().sum::<f64>() / n as f64;
        let se = (9.0f64 / n as f64).sqrt();
        assert!((mean - 9.0).abs() < 3.0 * se, "mean {mean}");
    }

    #[test]
    fn scale_doubles_v_with_same_seed() {
        let scheme = CensoringScheme::doubly_type_ii(8, 2, 7).unwrap();
        let p1 = PopulationParams::new(0.0, 1.0).unwrap();
        let p2 = PopulationParams::new(0.0, 2.0).unwrap();
        let s1 = simulate_stats(&scheme, &p1, &mut ChaCha8Rng::seed_from_u64(99));
        let s2 = simulate_stats(&scheme, &p2, &mut ChaCha8Rng::seed_from_u64(99));
        assert!((s2.v() - 2.0 * s1.v()).abs() < 1e-9 * s1.v());
    }

    #[test]
    fn minimum_respects_location() {
        let scheme = CensoringScheme::doubly_type_ii(6, 1, 6).unwrap();
        let params = PopulationParams::new(3.25, 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..500 {
            assert!(simulate_stats(&scheme, &params, &mut rng).x_a() >= 3.25);
        }
    }

    #[test]
    fn iid_adapter_is_definitional() {
        let data = [1.0, 2.0, 3.0];
        let via_scheme = scheme_to_stats(&SchemeDescriptor::Iid { n: 3 }, &data).unwrap();
        let direct = sufficient_stats(&data, 1, 3).unwrap();
        assert_eq!(via_scheme.v(), direct.v());
        assert_eq!(via_scheme.kappa(), 3.0);
        assert_eq!(via_scheme.m(), 2);
    }

    #[test]
    fn record_adapter_difference_of_extremes() {
        let s =
            scheme_to_stats(&SchemeDescriptor::Records { count: 3 }, &[1.0, 2.5, 4.0]).unwrap();
        assert_eq!(s.v(), 3.0);
        assert_eq!(s.m(), 2);
        assert_eq!(s.kappa(), 1.0);
        assert!(scheme_to_stats(&SchemeDescriptor::Records { count: 3 }, &[1.0, 0.5, 4.0])
            .is_err());
    }

    #[test]
    fn type_ii_adapter_statistic() {
        // 5 smallest of 8: v = sum + 3 * largest - 8 * smallest.
        let data = [1.0, 1.5, 2.0, 2.5, 4.0];
        let s = scheme_to_stats(&SchemeDescriptor::TypeII { total: 8, observed: 5 }, &data)
            .unwrap();
        let expect = 11.0 + 3.0 * 4.0 - 8.0 * 1.0;
        assert!((s.v() - expect).abs() < 1e-12);
        assert_eq!(s.m(), 4);
        assert_eq!(s.kappa(), 8.0);
    }

    #[test]
    fn progressive_mean_matches_gamma_shape() {
        let desc = SchemeDescriptor::ProgressiveTypeII { removals: vec![2, 0, 1, 0, 2] };
        let params = PopulationParams::new(0.0, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let n = 100_000;
        let mut sum = 0.0;
        for _ in 0..n {
            sum += simulate_scheme(&desc, &params, &mut rng).unwrap().v();
        }
        let mean = sum / n as f64;
        let shape = 4.0; // m_obs - 1
        let se = (shape / n as f64).sqrt();
        assert!((mean - shape).abs() < 3.0 * se, "mean {mean}");
    }

    #[test]
    fn progressive_with_no_removals_collapses_to_iid() {
        let data = [0.4, 0.9, 1.3, 2.2];
        let prog = scheme_to_stats(
            &SchemeDescriptor::ProgressiveTypeII { removals: vec![0, 0, 0, 0] },
            &data,
        )
        .unwrap();
        let iid = scheme_to_stats(&SchemeDescriptor::Iid { n: 4 }, &data).unwrap();
        assert!((prog.v() - iid.v()).abs() < 1e-12);
        assert_eq!(prog.m(), iid.m()); // both m_obs - 1 = n - 1
        assert_eq!(prog.kappa(), iid.kappa());
    }

    #[test]
    fn v_is_location_invariant_and_scale_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let scheme = CensoringScheme::doubly_type_ii(15, 3, 12).unwrap();
        let params = PopulationParams::new(0.0, 1.0).unwrap();
        for _ in 0..200 {
            let base = simulate_stats(&scheme, &params, &mut rng);
            let mut sample: Vec<f64> = (0..15)
                .map(|_| sample_exponential(1.0, &mut rng))
                .collect();
            sample.sort_by(|x, y| x.partial_cmp(y).unwrap());
            let s0 = sufficient_stats(&sample, 3, 12).unwrap();
            let shifted: Vec<f64> = sample.iter().map(|x| x + 11.5).collect();
            let scaled: Vec<f64> = sample.iter().map(|x| 2.5 * x).collect();
            let s_shift = sufficient_stats(&shifted, 3, 12).unwrap();
            let s_scale = sufficient_stats(&scaled, 3, 12).unwrap();
            assert!((s_shift.v() - s0.v()).abs() <= 1e-9 * s0.v());
            assert!((s_scale.v() - 2.5 * s0.v()).abs() <= 1e-9 * s0.v());
            let _ = base;
        }
    }

    fn two_sample_ks(mut a: Vec<f64>, mut b: Vec<f64>) -> f64 {
        a.sort_by(|x, y| x.partial_cmp(y).unwrap());
        b.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let (n, m) = (a.len(), b.len());
        let (mut i, mut j) = (0usize, 0usize);
        let mut d: f64 = 0.0;
        while i < n && j < m {
            if a[i] <= b[j] {
                i += 1;
            } else {
                j += 1;
            }
            d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
        }
        d
    }

    #[test]
    fn direct_path_matches_sample_path() {
        let scheme = CensoringScheme::doubly_type_ii(12, 2, 10).unwrap();
        let params = PopulationParams::new(0.7, 1.8).unwrap();
        let n = 100_000;
        let mut r1 = ChaCha8Rng::seed_from_u64(31);
        let mut r2 = ChaCha8Rng::seed_from_u64(32);
        let via_sample: Vec<f64> =
            (0..n).map(|_| simulate_stats(&scheme, &params, &mut r1).v()).collect();
        let via_gamma: Vec<f64> =
            (0..n).map(|_| simulate_stats_direct(&scheme, &params, &mut r2).v()).collect();
        let d = two_sample_ks(via_sample, via_gamma);
        let crit = (-(0.005f64).ln() / 2.0).sqrt() * (2.0 / n as f64).sqrt();
        assert!(d < crit, "two-sample KS {d} >= {crit}");

        let xa_sample: Vec<f64> = {
            let mut r = ChaCha8Rng::seed_from_u64(33);
            (0..n).map(|_| simulate_stats(&scheme, &params, &mut r).x_a()).collect()
        };
        let xa_gamma: Vec<f64> = {
            let mut r = ChaCha8Rng::seed_from_u64(34);
            (0..n).map(|_| simulate_stats_direct(&scheme, &params, &mut r).x_a()).collect()
        };
        let d2 = two_sample_ks(xa_sample, xa_gamma);
        assert!(d2 < crit, "two-sample KS for x_a: {d2} >= {crit}");
    }

    #[test]
    fn read_observations_roundtrip() {
        let dir = std::env::temp_dir().join("ordscale-model-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("obs.txt");
        std::fs::write(&path, "3.5\n\n1.25\n2\n").unwrap();
        let obs = read_observations(&path).unwrap();
        assert_eq!(obs, vec![1.25, 2.0, 3.5]);
        std::fs::write(&path, "3.5\nnot-a-number\n").unwrap();
        assert!(read_observations(&path).is_err());
        let missing = dir.join("missing.txt");
        match read_observations(&missing) {
            Err(Error::Io { path: p, .. }) => assert_eq!(p, missing),
            other => panic!("expected io error, got {other:?}"),
        }
    }
}
