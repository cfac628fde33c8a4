//! Deterministic Monte Carlo harness.
//!
//! Every replication draws from its own keyed substream, so results do not
//! depend on the number of workers. Replications are evaluated on a rayon pool
//! and reduced in replication order.

use std::str::FromStr;

use rayon::prelude::*;

use crate::applications::quantile::scan_extent;
use crate::applications::{
    max_score_fit, quantile_region_scan, radius_bound, sample_quantile, ssu_member_closed, LabeledPoint, ManskiModel,
    MeanModel, QuantileModel,
};
use crate::error::{Error, Result};
use crate::inference::{eb_member, region, split, RegionSpec};
use crate::numeric::linalg::{norm, sub_vec};
use crate::numeric::{
    chi_square_quantile, mvn_sample, sample_mean, sample_moments, substream, Cholesky, RngStream, SymMatrix,
};
use crate::wald::{axis_ratio, WaldRegion};

/// Stream key prefixes, one per experiment.
const COVERAGE_ID: u64 = 1;
const VOLUME_ID: u64 = 2;
const RASTER_ID: u64 = 3;
const QUANTILE_ID: u64 = 4;
const MANSKI_ID: u64 = 5;

/// Angle grid for the planar maximum score fit.
const MANSKI_ANGLES: usize = 2048;

/// Noise law for the binary-response design.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Noise {
    Logistic,
    Normal,
}

impl FromStr for Noise {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "logistic" => Ok(Noise::Logistic),
            "normal" => Ok(Noise::Normal),
            other => Err(format!("unknown noise '{other}' (expected logistic or normal)")),
        }
    }
}

impl Noise {
    fn draw(self, rng: &mut RngStream) -> f64 {
        match self {
            Noise::Logistic => rng.logistic(),
            Noise::Normal => rng.standard_normal(),
        }
    }
}

/// Settings shared by all experiments. Fields an experiment does not use are ignored.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub master_seed: u64,
    pub replications: usize,
    /// Total sample size `N` before splitting.
    pub n_total: usize,
    pub dims: Vec<usize>,
    pub alphas: Vec<f64>,
    /// Fraction of the sample used for the initial estimator.
    pub split_ratio: f64,
    /// Points per axis for rasters and scans.
    pub grid: usize,
    pub workers: usize,
    /// Inference-fold sizes for the quantile sweep.
    pub sizes: Vec<usize>,
    pub gamma: f64,
    pub noise: Noise,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            master_seed: 1,
            replications: 1000,
            n_total: 500,
            dims: vec![2, 5, 10, 20, 50, 100],
            alphas: vec![0.05],
            split_ratio: 0.5,
            grid: 201,
            workers: 1,
            sizes: vec![500, 2000],
            gamma: 0.5,
            noise: Noise::Logistic,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.replications < 1 {
            return bad("need at least one replication".into());
        }
        if self.n_total < 8 {
            return bad(format!("total sample size must be at least 8, got {}", self.n_total));
        }
        if self.dims.is_empty() || self.dims.contains(&0) {
            return bad("dimensions must be non-empty and positive".into());
        }
        if self.alphas.is_empty() || self.alphas.iter().any(|&a| !(a > 0.0 && a < 1.0)) {
            return bad("alpha levels must be non-empty and lie in (0,1)".into());
        }
        if !(self.split_ratio > 0.0 && self.split_ratio < 1.0) {
            return bad(format!("split ratio must lie in (0,1), got {}", self.split_ratio));
        }
        if self.grid < 2 {
            return bad(format!("grid needs at least 2 points per axis, got {}", self.grid));
        }
        if self.workers < 1 {
            return bad("need at least one worker".into());
        }
        if self.sizes.iter().any(|&n| n < 2) {
            return bad("inference-fold sizes must be at least 2".into());
        }
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return bad(format!("quantile level must lie in (0,1), got {}", self.gamma));
        }
        Ok(())
    }

    /// Size of the inference fold for a total of `n_total`.
    pub fn fold_size(&self, n_total: usize) -> usize {
        n_total - (self.split_ratio * n_total as f64).floor() as usize
    }

    /// Evaluates `f(0..R)` on the configured pool, in replication order.
    fn replicate<R: Send>(&self, f: impl Fn(usize) -> Result<R> + Sync + Send) -> Result<Vec<R>> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
        pool.install(|| (0..self.replications).into_par_iter().map(&f).collect())
    }
}

/// Monte Carlo standard error of a proportion.
pub fn proportion_se(p: f64, reps: usize) -> f64 {
    if reps == 0 {
        return f64::NAN;
    }
    (p * (1.0 - p) / reps as f64).sqrt()
}

/// Mean and standard error of the mean.
fn mean_se(values: &[f64]) -> (f64, f64) {
    let k = values.len();
    if k == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / k as f64;
    if k < 2 {
        return (mean, f64::NAN);
    }
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (mean, (ss / (k - 1) as f64 / k as f64).sqrt())
}

fn gaussian_sample(rng: &mut RngStream, n: usize, d: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| {
            let mut x = vec![0.0; d];
            rng.fill_standard_normal(&mut x);
            x
        })
        .collect()
}

/// Method label in the coverage sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoverageMethod {
    Wald,
    Split,
    SplitUpper,
}

impl CoverageMethod {
    pub const ALL: [CoverageMethod; 3] = [CoverageMethod::Wald, CoverageMethod::Split, CoverageMethod::SplitUpper];

    pub fn label(self) -> &'static str {
        match self {
            CoverageMethod::Wald => "Wald",
            CoverageMethod::Split => "SS",
            CoverageMethod::SplitUpper => "SS+U",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageRow {
    pub method: CoverageMethod,
    pub d: usize,
    pub n_total: usize,
    pub n: usize,
    pub alpha: f64,
    pub replications: usize,
    /// Replications where the method could not be evaluated (singular covariance).
    pub failures: usize,
    pub coverage: f64,
    pub mc_se: f64,
    /// Replications where the truth was an SS+U member outside the containment ball.
    pub containment_violations: usize,
}

/// Per-replication outcome for one `(d, alpha)`: `None` marks a failure.
#[derive(Debug, Clone, Copy)]
struct CoverageDraw {
    hits: [Option<bool>; 3],
    contained: bool,
}

fn coverage_draw(cfg: &ExperimentConfig, d: usize, rep: usize) -> Result<Vec<CoverageDraw>> {
    let mut rng = substream(cfg.master_seed, &[COVERAGE_ID, rep as u64, d as u64]);
    let data = gaussian_sample(&mut rng, cfg.n_total, d);
    let folds = split(&data, cfg.split_ratio)?;
    let anchor = sample_mean(folds.d1)?;
    let (xbar, cov) = sample_moments(folds.d2)?;
    let n = folds.n();
    let truth = vec![0.0; d];
    let wald_fit = match WaldRegion::from_sample(&data, cfg.alphas[0]) {
        Ok(w) => Some(w),
        Err(Error::NotPositiveDefinite { .. }) => None,
        Err(e) => return Err(e),
    };
    let model = MeanModel::new(d);
    let dist = norm(&sub_vec(&truth, &anchor));
    cfg.alphas
        .iter()
        .map(|&alpha| {
            let wald = match &wald_fit {
                Some(w) => Some(w.quad_form(&truth)? <= chi_square_quantile(d, 1.0 - alpha)? / cfg.n_total as f64),
                None => None,
            };
            let spec = RegionSpec::clt(alpha);
            let ss = region(&model, &anchor, folds.d2, spec)?.contains(&truth)?;
            let ssu = ssu_member_closed(&truth, &anchor, &xbar, &cov, n, alpha)?;
            let contained = !ssu || dist <= radius_bound(&anchor, &xbar, &cov, n, alpha)?;
            Ok(CoverageDraw { hits: [wald, Some(ss), Some(ssu)], contained })
        })
        .collect()
}

/// Coverage of `0_d` by the Wald, SS and SS+U regions under `N(0, I_d)`.
pub fn coverage_experiment(cfg: &ExperimentConfig) -> Result<Vec<CoverageRow>> {
    cfg.validate()?;
    let n = cfg.fold_size(cfg.n_total);
    let mut rows = Vec::new();
    for &d in &cfg.dims {
        let draws = cfg.replicate(|rep| coverage_draw(cfg, d, rep))?;
        for (ai, &alpha) in cfg.alphas.iter().enumerate() {
            for (mi, method) in CoverageMethod::ALL.into_iter().enumerate() {
                let outcomes: Vec<Option<bool>> = draws.iter().map(|r| r[ai].hits[mi]).collect();
                let failures = outcomes.iter().filter(|o| o.is_none()).count();
                let valid = cfg.replications - failures;
                let hits = outcomes.iter().filter(|&&o| o == Some(true)).count();
                let coverage = if valid > 0 { hits as f64 / valid as f64 } else { f64::NAN };
                let containment_violations = if method == CoverageMethod::SplitUpper {
                    draws.iter().filter(|r| !r[ai].contained).count()
                } else {
                    0
                };
                rows.push(CoverageRow {
                    method,
                    d,
                    n_total: cfg.n_total,
                    n,
                    alpha,
                    replications: cfg.replications,
                    failures,
                    coverage,
                    mc_se: proportion_se(coverage, valid),
                    containment_violations,
                });
            }
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VolumeRow {
    pub d: usize,
    pub n_total: usize,
    pub alpha: f64,
    /// Replications contributing a ratio.
    pub replications: usize,
    pub failures: usize,
    pub ratio_mean: f64,
    pub ratio_se: f64,
}

/// SS+U containment radius over the geometric mean of the Wald semi-axes.
pub fn volume_ratio_draw(cfg: &ExperimentConfig, d: usize, alpha: f64, rep: usize) -> Result<Option<f64>> {
    let mut rng = substream(cfg.master_seed, &[VOLUME_ID, rep as u64, d as u64]);
    let data = gaussian_sample(&mut rng, cfg.n_total, d);
    let folds = split(&data, cfg.split_ratio)?;
    let anchor = sample_mean(folds.d1)?;
    let (xbar, cov) = sample_moments(folds.d2)?;
    let h = radius_bound(&anchor, &xbar, &cov, folds.n(), alpha)?;
    let wald = match WaldRegion::from_sample(&data, alpha) {
        Ok(w) => w,
        Err(Error::NotPositiveDefinite { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    axis_ratio(h, &wald.semi_axes()?).map(Some)
}

pub fn volume_experiment(cfg: &ExperimentConfig) -> Result<Vec<VolumeRow>> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for &d in &cfg.dims {
        for &alpha in &cfg.alphas {
            let draws = cfg.replicate(|rep| volume_ratio_draw(cfg, d, alpha, rep))?;
            let ratios: Vec<f64> = draws.iter().flatten().copied().collect();
            let (ratio_mean, ratio_se) = mean_se(&ratios);
            rows.push(VolumeRow {
                d,
                n_total: cfg.n_total,
                alpha,
                replications: ratios.len(),
                failures: draws.len() - ratios.len(),
                ratio_mean,
                ratio_se,
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RasterMethod {
    Asymptotic,
    Split,
    SplitUpper,
}

impl RasterMethod {
    pub const ALL: [RasterMethod; 3] = [RasterMethod::Asymptotic, RasterMethod::Split, RasterMethod::SplitUpper];

    pub fn label(self) -> &'static str {
        match self {
            RasterMethod::Asymptotic => "Asymptotic",
            RasterMethod::Split => "SS",
            RasterMethod::SplitUpper => "SS+U",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RasterRow {
    pub method: RasterMethod,
    /// Confidence level `1 - alpha`.
    pub level: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub member: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Raster {
    pub anchor: Vec<f64>,
    /// `(alpha, radius_bound)` per level.
    pub radii: Vec<(f64, f64)>,
    pub half_width: f64,
    pub rows: Vec<RasterRow>,
}

/// Covariance of the two-dimensional raster design.
pub const RASTER_CORRELATION: f64 = 0.3;

/// Two-dimensional membership rasters for one draw from `N(0, [[1, .3], [.3, 1]])`.
///
/// `cfg.alphas` are the miscoverage levels; the grid is centred at the initial
/// estimate with half-width three times the containment radius at the smallest
/// alpha. The draw depends only on the master seed.
pub fn region_raster(cfg: &ExperimentConfig) -> Result<Raster> {
    cfg.validate()?;
    let sigma = SymMatrix::from_upper(2, |i, j| if i == j { 1.0 } else { RASTER_CORRELATION });
    let chol = Cholesky::new(&sigma)?;
    let mut rng = substream(cfg.master_seed, &[RASTER_ID]);
    let zero = [0.0, 0.0];
    let data = (0..cfg.n_total).map(|_| mvn_sample(&zero, chol.factor(), &mut rng)).collect::<Result<Vec<_>>>()?;
    let folds = split(&data, cfg.split_ratio)?;
    let anchor = sample_mean(folds.d1)?;
    let (xbar, cov) = sample_moments(folds.d2)?;
    let n = folds.n();
    let radii =
        cfg.alphas.iter().map(|&a| Ok((a, radius_bound(&anchor, &xbar, &cov, n, a)?))).collect::<Result<Vec<_>>>()?;
    let widest = radii.iter().fold(0.0_f64, |acc, &(_, h)| acc.max(h));
    let half_width = 3.0 * widest;
    let g = cfg.grid;
    let coord = |k: usize, c: f64| c - half_width + 2.0 * half_width * k as f64 / (g - 1) as f64;
    let model = MeanModel::new(2);
    let wald = WaldRegion::from_sample(&data, cfg.alphas[0])?;
    let mut rows = Vec::with_capacity(3 * cfg.alphas.len() * g * g);
    for &alpha in &cfg.alphas {
        let level = 1.0 - alpha;
        let wald_cut = chi_square_quantile(2, level)? / cfg.n_total as f64;
        let ss = region(&model, &anchor, folds.d2, RegionSpec::clt(alpha))?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
        let columns = pool.install(|| {
            (0..g)
                .into_par_iter()
                .map(|i| {
                    let t1 = coord(i, anchor[0]);
                    (0..g)
                        .map(|j| {
                            let theta = vec![t1, coord(j, anchor[1])];
                            Ok([
                                wald.quad_form(&theta)? <= wald_cut,
                                ss.contains(&theta)?,
                                ssu_member_closed(&theta, &anchor, &xbar, &cov, n, alpha)?,
                            ])
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })?;
        for (mi, method) in RasterMethod::ALL.into_iter().enumerate() {
            for (i, column) in columns.iter().enumerate() {
                for (j, flags) in column.iter().enumerate() {
                    rows.push(RasterRow {
                        method,
                        level,
                        theta1: coord(i, anchor[0]),
                        theta2: coord(j, anchor[1]),
                        member: flags[mi],
                    });
                }
            }
        }
    }
    Ok(Raster { anchor, radii, half_width, rows })
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantileWidthRow {
    /// Inference-fold size.
    pub n: usize,
    pub gamma: f64,
    pub alpha: f64,
    pub replications: usize,
    pub width_mean: f64,
    pub width_se: f64,
    /// Replications where no scan point was a member.
    pub empty: usize,
    /// Replications whose members were not contiguous on the grid.
    pub gapped: usize,
}

/// Grid width of the CLT quantile region under a standard normal.
///
/// The total sample is sized so the inference fold has `n` points.
pub fn quantile_width_experiment(cfg: &ExperimentConfig) -> Result<Vec<QuantileWidthRow>> {
    cfg.validate()?;
    let model = QuantileModel::new(cfg.gamma)?;
    let mut rows = Vec::new();
    for &n in &cfg.sizes {
        let n_total = (n as f64 / (1.0 - cfg.split_ratio)).round() as usize;
        for &alpha in &cfg.alphas {
            let scans = cfg.replicate(|rep| {
                let mut rng = substream(cfg.master_seed, &[QUANTILE_ID, rep as u64, n as u64]);
                let mut data = vec![0.0; n_total];
                rng.fill_standard_normal(&mut data);
                let folds = split(&data, cfg.split_ratio)?;
                let anchor = sample_quantile(folds.d1, cfg.gamma)?;
                quantile_region_scan(&model, anchor, folds.d2, RegionSpec::clt(alpha), scan_extent(folds.d2)?, cfg.grid)
            })?;
            let widths: Vec<f64> = scans.iter().map(|s| s.width()).collect();
            let (width_mean, width_se) = mean_se(&widths);
            rows.push(QuantileWidthRow {
                n: cfg.fold_size(n_total),
                gamma: cfg.gamma,
                alpha,
                replications: cfg.replications,
                width_mean,
                width_se,
                empty: scans.iter().filter(|s| s.members == 0).count(),
                gapped: scans.iter().filter(|s| s.interior_gaps > 0).count(),
            });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ManskiRow {
    pub n: usize,
    pub d: usize,
    pub alpha: f64,
    pub replications: usize,
    pub coverage: f64,
    pub mc_se: f64,
    /// Replications where the truth was a member at the loosest level but not
    /// at a stricter one.
    pub nesting_violations: usize,
}

/// Binary-response draw `y = sgn(x'theta + eps)` with `x ~ N(0, I_2)`.
pub fn manski_sample(rng: &mut RngStream, n: usize, theta: &[f64], noise: Noise) -> Vec<LabeledPoint<f64>> {
    (0..n)
        .map(|_| {
            let mut x = vec![0.0; theta.len()];
            rng.fill_standard_normal(&mut x);
            let index = x.iter().zip(theta).map(|(a, b)| a * b).sum::<f64>() + noise.draw(rng);
            LabeledPoint::new(if index >= 0.0 { 1.0 } else { -1.0 }, x)
        })
        .collect()
}

/// Empirical Bernstein coverage of `theta_P = (1, 0)` in the Manski model.
pub fn manski_coverage_experiment(cfg: &ExperimentConfig) -> Result<Vec<ManskiRow>> {
    cfg.validate()?;
    let truth = vec![1.0, 0.0];
    let model = ManskiModel::new(2);
    let mut alphas = cfg.alphas.clone();
    alphas.sort_by(|a, b| a.partial_cmp(b).expect("validated alphas"));
    let draws = cfg.replicate(|rep| {
        let mut rng = substream(cfg.master_seed, &[MANSKI_ID, rep as u64]);
        let data = manski_sample(&mut rng, cfg.n_total, &truth, cfg.noise);
        let folds = split(&data, cfg.split_ratio)?;
        let anchor = max_score_fit(folds.d1, MANSKI_ANGLES, 1, &mut rng)?;
        alphas.iter().map(|&a| eb_member(&model, &truth, &anchor, folds.d2, a, false)).collect::<Result<Vec<bool>>>()
    })?;
    let n = cfg.fold_size(cfg.n_total);
    // Membership must be monotone in alpha: smaller alpha, larger region.
    let nesting_violations = draws.iter().filter(|hits| hits.windows(2).any(|w| w[1] && !w[0])).count();
    Ok(alphas
        .iter()
        .enumerate()
        .map(|(k, &alpha)| {
            let hits = draws.iter().filter(|h| h[k]).count();
            let coverage = hits as f64 / cfg.replications as f64;
            ManskiRow {
                n,
                d: 2,
                alpha,
                replications: cfg.replications,
                coverage,
                mc_se: proportion_se(coverage, cfg.replications),
                nesting_violations,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ExperimentConfig {
        ExperimentConfig { replications: 20, n_total: 60, dims: vec![2, 3], ..Default::default() }
    }

    #[test]
    fn coverage_rows_shape_and_range() {
        let rows = coverage_experiment(&small()).unwrap();
        assert_eq!(rows.len(), 6);
        for r in &rows {
            assert!((0.0..=1.0).contains(&r.coverage));
            assert_eq!(r.n, 30);
            assert!((r.mc_se - proportion_se(r.coverage, r.replications - r.failures)).abs() < 1e-15);
            assert_eq!(r.containment_violations, 0);
        }
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let a = coverage_experiment(&small()).unwrap();
        let b = coverage_experiment(&ExperimentConfig { workers: 3, ..small() }).unwrap();
        assert_eq!(a, b);
        let a = volume_experiment(&small()).unwrap();
        let b = volume_experiment(&ExperimentConfig { workers: 2, ..small() }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn singular_wald_counts_as_failure() {
        let cfg = ExperimentConfig { replications: 3, n_total: 8, dims: vec![10], ..Default::default() };
        let rows = coverage_experiment(&cfg).unwrap();
        let wald = rows.iter().find(|r| r.method == CoverageMethod::Wald).unwrap();
        assert_eq!(wald.failures, 3);
        assert!(wald.coverage.is_nan());
        let ss = rows.iter().find(|r| r.method == CoverageMethod::Split).unwrap();
        assert_eq!(ss.failures, 0);
    }

    #[test]
    fn volume_ratios_are_positive() {
        for r in volume_experiment(&small()).unwrap() {
            assert!(r.ratio_mean > 0.0);
            assert_eq!(r.replications + r.failures, 20);
        }
    }

    #[test]
    fn raster_basic_relations() {
        let cfg = ExperimentConfig { n_total: 100, grid: 41, alphas: vec![0.05, 0.15, 0.25], ..Default::default() };
        let raster = region_raster(&cfg).unwrap();
        assert_eq!(raster.rows.len(), 3 * 3 * 41 * 41);
        let cells = 41 * 41;
        for (li, _) in cfg.alphas.iter().enumerate() {
            let block = |m: usize| &raster.rows[(li * 3 + m) * cells..(li * 3 + m + 1) * cells];
            let (ss, ssu) = (block(1), block(2));
            for (a, b) in ss.iter().zip(ssu) {
                assert!(!b.member || a.member);
            }
            // The grid centre is the anchor.
            assert!(ss[cells / 2].member && ssu[cells / 2].member);
        }
    }

    #[test]
    fn quantile_scan_contains_anchor() {
        let cfg = ExperimentConfig { replications: 5, sizes: vec![100], grid: 801, ..Default::default() };
        let rows = quantile_width_experiment(&cfg).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].n, 100);
        assert!(rows[0].width_mean > 0.0);
        assert_eq!(rows[0].empty, 0);
    }

    #[test]
    fn manski_nesting() {
        let cfg = ExperimentConfig { replications: 10, n_total: 120, alphas: vec![0.5, 0.05], ..Default::default() };
        let rows = manski_coverage_experiment(&cfg).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows[0].alpha < rows[1].alpha);
        assert!(rows[0].coverage >= rows[1].coverage);
        assert_eq!(rows[0].nesting_violations, 0);
    }

    #[test]
    fn config_validation() {
        assert!(ExperimentConfig { replications: 0, ..Default::default() }.validate().is_err());
        assert!(ExperimentConfig { n_total: 7, ..Default::default() }.validate().is_err());
        assert!(ExperimentConfig { dims: vec![0], ..Default::default() }.validate().is_err());
        assert!(ExperimentConfig { alphas: vec![1.0], ..Default::default() }.validate().is_err());
        assert!("cauchy".parse::<Noise>().is_err());
        assert_eq!("normal".parse::<Noise>().unwrap(), Noise::Normal);
    }
}
