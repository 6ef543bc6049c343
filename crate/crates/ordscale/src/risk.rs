//! Monte Carlo risk estimation and relative-risk-improvement curves.
//!
//! Risks are estimated with common random numbers: at a given scale ratio
//! every estimator is evaluated on the same simulated statistics, replicate
//! by replicate, which sharpens the small risk differences between the
//! baseline and its improvements. Replicates run in blocks with one
//! generator stream per (ratio, block), and block results are reduced in a
//! fixed order, so output is bit-identical for a given seed regardless of
//! how many worker threads execute the blocks.

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::loss::LossKind;
use crate::model::{simulate_stats, CensoringScheme, PopulationParams, StatsPair};
use crate::{sigma1, sigma2};

/// Which scale parameter the simulation estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    Sigma1,
    Sigma2,
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Target::Sigma1 => "sigma1",
            Target::Sigma2 => "sigma2",
        })
    }
}

/// Every estimator the library implements. Family parameters (the Maruyama
/// exponent and the shrinkage exponent) live in [`SimConfig`] so the id
/// stays hashable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EstimatorId {
    Baee,
    Rmle,
    RmleImproved,
    SteinS1,
    SteinS2,
    SteinS3,
    DoubleShrink,
    Kubokawa,
    Maruyama,
    GenBayes,
    Strawderman,
}

impl EstimatorId {
    pub const ALL: [EstimatorId; 11] = [
        EstimatorId::Baee,
        EstimatorId::Rmle,
        EstimatorId::RmleImproved,
        EstimatorId::SteinS1,
        EstimatorId::SteinS2,
        EstimatorId::SteinS3,
        EstimatorId::DoubleShrink,
        EstimatorId::Kubokawa,
        EstimatorId::Maruyama,
        EstimatorId::GenBayes,
        EstimatorId::Strawderman,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            EstimatorId::Baee => "baee",
            EstimatorId::Rmle => "rmle",
            EstimatorId::RmleImproved => "rmle_improved",
            EstimatorId::SteinS1 => "stein_s1",
            EstimatorId::SteinS2 => "stein_s2",
            EstimatorId::SteinS3 => "stein_s3",
            EstimatorId::DoubleShrink => "double_shrink",
            EstimatorId::Kubokawa => "kubokawa",
            EstimatorId::Maruyama => "maruyama",
            EstimatorId::GenBayes => "gen_bayes",
            EstimatorId::Strawderman => "strawderman",
        }
    }

    /// Conventional symbol for table headers.
    pub fn symbol(&self, target: Target) -> &'static str {
        match (self, target) {
            (EstimatorId::Baee, Target::Sigma1) => "d01",
            (EstimatorId::Baee, Target::Sigma2) => "d02",
            (EstimatorId::Rmle, Target::Sigma1) => "dRmle",
            (EstimatorId::Rmle, Target::Sigma2) => "dRmle*",
            (EstimatorId::RmleImproved, Target::Sigma1) => "dRmle+",
            (EstimatorId::RmleImproved, Target::Sigma2) => "dRmle*+",
            (EstimatorId::SteinS1, Target::Sigma1) => "d1S1",
            (EstimatorId::SteinS1, Target::Sigma2) => "d2S1",
            (EstimatorId::SteinS2, Target::Sigma1) => "d1S2",
            (EstimatorId::SteinS2, Target::Sigma2) => "d2S2",
            (EstimatorId::SteinS3, Target::Sigma1) => "d1S3",
            (EstimatorId::SteinS3, Target::Sigma2) => "-",
            (EstimatorId::DoubleShrink, Target::Sigma2) => "d2S3",
            (EstimatorId::DoubleShrink, Target::Sigma1) => "-",
            (EstimatorId::Kubokawa, Target::Sigma1) => "dPhi1",
            (EstimatorId::Kubokawa, Target::Sigma2) => "dPhi2",
            (EstimatorId::Maruyama, Target::Sigma1) => "dMar1",
            (EstimatorId::Maruyama, Target::Sigma2) => "dMar2",
            (EstimatorId::GenBayes, Target::Sigma1) => "dGB1",
            (EstimatorId::GenBayes, Target::Sigma2) => "dGB2",
            (EstimatorId::Strawderman, Target::Sigma1) => "dStr",
            (EstimatorId::Strawderman, Target::Sigma2) => "-",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|e| e.label() == s)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown estimator {s:?}; known: {}",
                    Self::ALL.map(|e| e.label()).join(", ")
                ))
            })
    }

    /// Whether this estimator exists for the given target.
    pub fn applicable(&self, target: Target) -> bool {
        !matches!(
            (self, target),
            (EstimatorId::SteinS3 | EstimatorId::Strawderman, Target::Sigma2)
                | (EstimatorId::DoubleShrink, Target::Sigma1)
        )
    }

    /// All estimators applicable to `target`.
    pub fn all_for(target: Target) -> Vec<EstimatorId> {
        Self::ALL.iter().copied().filter(|e| e.applicable(target)).collect()
    }

    /// Whether the Strawderman shrinkage exists for `loss` (it is derived
    /// for the quadratic and entropy losses only).
    pub fn supports_loss(&self, loss: &LossKind) -> bool {
        match self {
            EstimatorId::Strawderman => {
                matches!(loss, LossKind::Quadratic | LossKind::Entropy)
            }
            EstimatorId::Kubokawa | EstimatorId::Maruyama | EstimatorId::GenBayes => {
                !matches!(loss, LossKind::Custom(_))
            }
            _ => true,
        }
    }
}

/// Complete description of one simulation run.
#[derive(Debug, Clone)]
pub struct SimConfig {
    pub scheme1: CensoringScheme,
    pub scheme2: CensoringScheme,
    pub mu1: f64,
    pub mu2: f64,
    /// Scale ratios sigma1 / sigma2, strictly increasing, each in (0, 1].
    pub eta_grid: Vec<f64>,
    /// Fixed larger scale; the ratio varies the smaller one.
    pub sigma2: f64,
    pub replicates: usize,
    pub seed: u64,
    pub loss: LossKind,
    pub target: Target,
    pub estimators: Vec<EstimatorId>,
    /// Maruyama family exponent.
    pub alpha: f64,
    /// Strawderman shrinkage exponent.
    pub epsilon: f64,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.eta_grid.is_empty() {
            return Err(Error::Config("the ratio grid must not be empty".into()));
        }
        for w in self.eta_grid.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::Config("the ratio grid must be strictly increasing".into()));
            }
        }
        for &eta in &self.eta_grid {
            if !(eta > 0.0 && eta <= 1.0) {
                return Err(Error::Config(format!(
                    "every ratio must lie in (0, 1], got {eta}"
                )));
            }
        }
        if self.replicates == 0 {
            return Err(Error::Config("need at least one replicate".into()));
        }
        if !(self.sigma2 > 0.0) || !self.sigma2.is_finite() {
            return Err(Error::Config(format!("sigma2 must be positive, got {}", self.sigma2)));
        }
        if !(self.alpha >= 1.0) {
            return Err(Error::Config(format!("alpha must be >= 1, got {}", self.alpha)));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::Config(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if self.estimators.is_empty() {
            return Err(Error::Config("no estimators selected".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for est in &self.estimators {
            if !est.applicable(self.target) {
                return Err(Error::Config(format!(
                    "estimator {} is not defined for target {}",
                    est.label(),
                    self.target
                )));
            }
            if !est.supports_loss(&self.loss) {
                return Err(Error::Config(format!(
                    "estimator {} is not defined for the {:?} loss",
                    est.label(),
                    self.loss
                )));
            }
            if !seen.insert(*est) {
                return Err(Error::Config(format!(
                    "estimator {} listed twice",
                    est.label()
                )));
            }
        }
        Ok(())
    }
}

/// One row of a risk table.
#[derive(Debug, Clone, Copy)]
pub struct RiskRow {
    pub eta: f64,
    pub estimator: EstimatorId,
    pub risk: f64,
    pub stderr: f64,
    /// The signed formula `100 (risk - risk0) / risk0`: negative when the
    /// estimator improves on the baseline.
    pub rri: f64,
    /// `-rri`, the quantity the curves plot: positive when improving.
    pub improvement: f64,
}

/// Risk estimates in grid order: ratios outermost, estimators within.
#[derive(Debug, Clone, Default)]
pub struct RiskTable {
    pub rows: Vec<RiskRow>,
}

impl RiskTable {
    /// Rows for one estimator, in ratio order.
    pub fn curve(&self, estimator: EstimatorId) -> Vec<&RiskRow> {
        self.rows.iter().filter(|r| r.estimator == estimator).collect()
    }
}

/// Evaluate one estimator on one simulated pair.
pub fn evaluate_estimator(
    id: EstimatorId,
    target: Target,
    pair: &StatsPair,
    loss: &LossKind,
    alpha: f64,
    epsilon: f64,
) -> Result<f64> {
    if !id.applicable(target) {
        return Err(Error::Config(format!(
            "estimator {} is not defined for target {target}",
            id.label()
        )));
    }
    match target {
        Target::Sigma1 => match id {
            EstimatorId::Baee => sigma1::baee(pair, loss),
            EstimatorId::Rmle => Ok(sigma1::restricted_mle(pair)),
            EstimatorId::RmleImproved => sigma1::improved_restricted_mle(pair, loss),
            EstimatorId::SteinS1 => sigma1::stein_s1(pair, loss),
            EstimatorId::SteinS2 => sigma1::stein_s2(pair, loss),
            EstimatorId::SteinS3 => sigma1::stein_s3(pair, loss),
            EstimatorId::Kubokawa => sigma1::kubokawa(pair, loss),
            EstimatorId::Maruyama => sigma1::maruyama(pair, loss, alpha),
            EstimatorId::GenBayes => sigma1::gen_bayes(
                loss,
                pair.pop1().v(),
                pair.pop2().v(),
                pair.pop1().m(),
                pair.pop2().m(),
            ),
            EstimatorId::Strawderman => {
                let params = sigma1::StrawdermanParams::new(loss.clone(), epsilon)?;
                Ok(sigma1::strawderman(pair, &params)?.value)
            }
            EstimatorId::DoubleShrink => unreachable!("rejected above"),
        },
        Target::Sigma2 => match id {
            EstimatorId::Baee => sigma2::baee(pair, loss),
            EstimatorId::Rmle => Ok(sigma2::restricted_mle(pair)),
            EstimatorId::RmleImproved => sigma2::improved_restricted_mle(pair, loss),
            EstimatorId::SteinS1 => sigma2::stein_s1(pair, loss),
            EstimatorId::SteinS2 => sigma2::stein_s2(pair, loss),
            EstimatorId::DoubleShrink => sigma2::double_shrink(pair, loss),
            EstimatorId::Kubokawa => sigma2::kubokawa(pair, loss),
            EstimatorId::Maruyama => sigma2::maruyama(pair, loss, alpha),
            EstimatorId::GenBayes => sigma2::gen_bayes(
                loss,
                pair.pop1().v(),
                pair.pop2().v(),
                pair.pop1().m(),
                pair.pop2().m(),
            ),
            EstimatorId::SteinS3 | EstimatorId::Strawderman => unreachable!("rejected above"),
        },
    }
}

const BLOCK: usize = 512;

fn stream_id(eta_idx: usize, block_idx: usize) -> u64 {
    ((eta_idx as u64) << 32) | block_idx as u64
}

/// The quadrature-backed weights (class boundary, family, generalized Bayes)
/// are smooth one-dimensional functions of a statistic ratio. Inside the
/// replicate loop they are read from a dense table over the mapped
/// coordinate `s = z / (1 + z)` instead of re-integrating; with 4096
/// intervals the interpolation error sits near 1e-8, orders of magnitude
/// below Monte Carlo noise, and the table is built serially so results stay
/// independent of thread count.
struct WeightTable {
    s_lo: f64,
    s_hi: f64,
    values: Vec<f64>,
}

const WEIGHT_NODES: usize = 4097;
const WEIGHT_Z_LO: f64 = 1e-7;
const WEIGHT_Z_HI: f64 = 1e7;

impl WeightTable {
    fn build(weight: impl Fn(f64) -> Result<f64>) -> Result<Self> {
        let s_lo = WEIGHT_Z_LO / (1.0 + WEIGHT_Z_LO);
        let s_hi = WEIGHT_Z_HI / (1.0 + WEIGHT_Z_HI);
        let step = (s_hi - s_lo) / (WEIGHT_NODES - 1) as f64;
        let mut values = Vec::with_capacity(WEIGHT_NODES);
        for i in 0..WEIGHT_NODES {
            let s = s_lo + step * i as f64;
            values.push(weight(s / (1.0 - s))?);
        }
        Ok(Self { s_lo, s_hi, values })
    }

    fn eval(&self, z: f64) -> f64 {
        let s = (z / (1.0 + z)).clamp(self.s_lo, self.s_hi);
        let pos = (s - self.s_lo) / (self.s_hi - self.s_lo) * (WEIGHT_NODES - 1) as f64;
        let idx = (pos as usize).min(WEIGHT_NODES - 2);
        let frac = pos - idx as f64;
        self.values[idx] * (1.0 - frac) + self.values[idx + 1] * frac
    }
}

/// Per-run evaluation context: the configuration plus weight tables for the
/// estimators that would otherwise integrate inside the loop.
struct EvalCtx<'a> {
    cfg: &'a SimConfig,
    kubokawa: Option<WeightTable>,
    maruyama: Option<WeightTable>,
    gen_bayes: Option<WeightTable>,
}

impl<'a> EvalCtx<'a> {
    fn new(cfg: &'a SimConfig, estimators: &[EstimatorId]) -> Result<Self> {
        let (m1, m2) = (cfg.scheme1.m(), cfg.scheme2.m());
        let loss = &cfg.loss;
        let mut ctx = Self { cfg, kubokawa: None, maruyama: None, gen_bayes: None };
        for est in estimators {
            match (est, cfg.target) {
                (EstimatorId::Kubokawa, Target::Sigma1) => {
                    ctx.kubokawa = Some(WeightTable::build(|z| {
                        sigma1::kubokawa_weight(loss, z, m1, m2)
                    })?);
                }
                (EstimatorId::Kubokawa, Target::Sigma2) => {
                    ctx.kubokawa = Some(WeightTable::build(|z| {
                        sigma2::kubokawa_weight(loss, z, m1, m2)
                    })?);
                }
                (EstimatorId::Maruyama, Target::Sigma1) => {
                    ctx.maruyama = Some(WeightTable::build(|z| {
                        sigma1::maruyama_weight(loss, cfg.alpha, z, m1, m2)
                    })?);
                }
                (EstimatorId::Maruyama, Target::Sigma2) => {
                    ctx.maruyama = Some(WeightTable::build(|z| {
                        sigma2::maruyama_weight(loss, cfg.alpha, z, m1, m2)
                    })?);
                }
                (EstimatorId::GenBayes, Target::Sigma1) => {
                    ctx.gen_bayes = Some(WeightTable::build(|z| {
                        sigma1::gen_bayes(loss, 1.0, z, m1, m2)
                    })?);
                }
                (EstimatorId::GenBayes, Target::Sigma2) => {
                    ctx.gen_bayes = Some(WeightTable::build(|z| {
                        sigma2::gen_bayes(loss, z, 1.0, m1, m2)
                    })?);
                }
                _ => {}
            }
        }
        Ok(ctx)
    }

    fn evaluate(&self, id: EstimatorId, pair: &StatsPair) -> Result<f64> {
        let cfg = self.cfg;
        let (v1, v2) = (pair.pop1().v(), pair.pop2().v());
        let table = match id {
            EstimatorId::Kubokawa => &self.kubokawa,
            EstimatorId::Maruyama => &self.maruyama,
            EstimatorId::GenBayes => &self.gen_bayes,
            _ => &None,
        };
        if let Some(table) = table {
            return Ok(match cfg.target {
                Target::Sigma1 => table.eval(v2 / v1) * v1,
                Target::Sigma2 => table.eval(v1 / v2) * v2,
            });
        }
        evaluate_estimator(id, cfg.target, pair, &cfg.loss, cfg.alpha, cfg.epsilon)
    }
}

/// Draw the statistics pair for one replicate.
fn draw_pair(cfg: &SimConfig, sigma1_scale: f64, rng: &mut ChaCha8Rng) -> StatsPair {
    let p1 = PopulationParams { mu: cfg.mu1, sigma: sigma1_scale };
    let p2 = PopulationParams { mu: cfg.mu2, sigma: cfg.sigma2 };
    let s1 = simulate_stats(&cfg.scheme1, &p1, rng);
    let s2 = simulate_stats(&cfg.scheme2, &p2, rng);
    StatsPair::new(s1, s2)
}

/// Per-block accumulation: loss sums and squared sums per estimator.
struct BlockSums {
    sum: Vec<f64>,
    sum_sq: Vec<f64>,
}

fn run_block(
    ctx: &EvalCtx<'_>,
    estimators: &[EstimatorId],
    eta_idx: usize,
    block_idx: usize,
    count: usize,
) -> Result<BlockSums> {
    let cfg = ctx.cfg;
    let eta = cfg.eta_grid[eta_idx];
    let sigma1_scale = eta * cfg.sigma2;
    let sigma_target = match cfg.target {
        Target::Sigma1 => sigma1_scale,
        Target::Sigma2 => cfg.sigma2,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream_id(eta_idx, block_idx));
    let mut sums = BlockSums {
        sum: vec![0.0; estimators.len()],
        sum_sq: vec![0.0; estimators.len()],
    };
    for _ in 0..count {
        let pair = draw_pair(cfg, sigma1_scale, &mut rng);
        for (slot, est) in estimators.iter().enumerate() {
            let delta = ctx.evaluate(*est, &pair)?;
            let loss_val = cfg.loss.value(delta / sigma_target)?;
            sums.sum[slot] += loss_val;
            sums.sum_sq[slot] += loss_val * loss_val;
        }
    }
    Ok(sums)
}

/// Risks (mean, standard error) of `estimators` at one grid ratio, common
/// random numbers across the estimators.
fn risks_at(
    ctx: &EvalCtx<'_>,
    estimators: &[EstimatorId],
    eta_idx: usize,
) -> Result<Vec<(f64, f64)>> {
    let cfg = ctx.cfg;
    let n = cfg.replicates;
    let blocks: Vec<(usize, usize)> = (0..n.div_ceil(BLOCK))
        .map(|b| (b, BLOCK.min(n - b * BLOCK)))
        .collect();
    let partials: Vec<BlockSums> = blocks
        .par_iter()
        .map(|&(b, count)| run_block(ctx, estimators, eta_idx, b, count))
        .collect::<Result<Vec<_>>>()?;
    // Fixed-order reduction keeps the result independent of scheduling.
    let mut sum = vec![0.0; estimators.len()];
    let mut sum_sq = vec![0.0; estimators.len()];
    for part in &partials {
        for i in 0..estimators.len() {
            sum[i] += part.sum[i];
            sum_sq[i] += part.sum_sq[i];
        }
    }
    let nf = n as f64;
    Ok((0..estimators.len())
        .map(|i| {
            let mean = sum[i] / nf;
            let stderr = if n > 1 {
                let var = (sum_sq[i] - nf * mean * mean).max(0.0) / (nf - 1.0);
                (var / nf).sqrt()
            } else {
                0.0
            };
            (mean, stderr)
        })
        .collect())
}

fn in_pool<T: Send>(f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match std::env::var("ORDSCALE_THREADS") {
        Err(_) => f(),
        Ok(raw) => {
            let threads: usize = raw.parse().map_err(|_| {
                Error::Config(format!("ORDSCALE_THREADS must be a positive integer, got {raw:?}"))
            })?;
            if threads == 0 {
                return Err(Error::Config("ORDSCALE_THREADS must be at least 1".into()));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::Config(format!("could not build thread pool: {e}")))?;
            pool.install(f)
        }
    }
}

/// Estimated risk and standard error of a single estimator at one grid
/// ratio. Draws are shared with [`rri_curve`]: the same seed sees the same
/// statistics replicate for replicate.
pub fn estimate_risk(cfg: &SimConfig, estimator: EstimatorId, eta: f64) -> Result<(f64, f64)> {
    cfg.validate()?;
    let eta_idx = cfg
        .eta_grid
        .iter()
        .position(|&e| e == eta)
        .ok_or_else(|| Error::Config(format!("ratio {eta} is not on the configured grid")))?;
    if !estimator.applicable(cfg.target) {
        return Err(Error::Config(format!(
            "estimator {} is not defined for target {}",
            estimator.label(),
            cfg.target
        )));
    }
    let estimators = [estimator];
    let ctx = EvalCtx::new(cfg, &estimators)?;
    in_pool(|| Ok(risks_at(&ctx, &estimators, eta_idx)?[0]))
}

/// Full risk table over the ratio grid with the baseline-relative columns.
/// The baseline is always evaluated, whether or not it was requested.
pub fn rri_curve(cfg: &SimConfig) -> Result<RiskTable> {
    cfg.validate()?;
    let mut estimators = cfg.estimators.clone();
    if !estimators.contains(&EstimatorId::Baee) {
        estimators.insert(0, EstimatorId::Baee);
    }
    let ctx = EvalCtx::new(cfg, &estimators)?;
    in_pool(|| {
        let mut table = RiskTable::default();
        for eta_idx in 0..cfg.eta_grid.len() {
            let eta = cfg.eta_grid[eta_idx];
            let risks = risks_at(&ctx, &estimators, eta_idx)?;
            let base_slot = estimators
                .iter()
                .position(|&e| e == EstimatorId::Baee)
                .expect("baseline inserted above");
            let (risk0, _) = risks[base_slot];
            if risk0 == 0.0 {
                return Err(Error::Config(
                    "baseline risk is zero; the relative columns are undefined \
                     (degenerate configuration)"
                        .into(),
                ));
            }
            for (slot, est) in estimators.iter().enumerate() {
                let (risk, stderr) = risks[slot];
                let rri = 100.0 * (risk - risk0) / risk0;
                table.rows.push(RiskRow {
                    eta,
                    estimator: *est,
                    risk,
                    stderr,
                    rri,
                    improvement: -rri,
                });
            }
        }
        Ok(table)
    })
}

/// Ten significant digits, plain ASCII, deterministic.
fn fmt10(x: f64) -> String {
    format!("{x:.9e}")
}

/// Write the table as CSV: `eta,estimator,risk,stderr,rri,improvement`.
pub fn write_csv_to<W: std::io::Write>(table: &RiskTable, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "eta,estimator,risk,stderr,rri,improvement")?;
    for row in &table.rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt10(row.eta),
            row.estimator.label(),
            fmt10(row.risk),
            fmt10(row.stderr),
            fmt10(row.rri),
            fmt10(row.improvement),
        )?;
    }
    Ok(())
}

/// Write the table to `path`, creating or truncating it.
pub fn write_csv(table: &RiskTable, path: &Path) -> Result<()> {
    let mut buf = Vec::new();
    write_csv_to(table, &mut buf).expect("writing to memory cannot fail");
    std::fs::write(path, buf).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}
