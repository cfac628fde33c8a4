//! Sample-splitting confidence sets for M-estimation.
//!
//! Given an initial estimate `anchor` fitted on the first fold and the
//! inference fold `d2`, a parameter `theta` is kept when the empirical loss
//! gap `P_n(m_theta - m_anchor)` does not exceed a one-sided threshold plus
//! `min(0, U(theta, anchor))`, where `U` is an optional upper bound on the
//! curvature supplied by the model. Three thresholds are available:
//!
//! * empirical Bernstein: `sqrt(2 s^2 ln(2/a) / n) + 7 B0 ln(2/a) / (3 (n-1))`,
//!   valid for every `n` when loss differences are bounded by `B0`;
//! * CLT: `z_a s / sqrt(n)` with `z_a` the upper `a` normal quantile;
//! * naive: zero (no calibration, anti-conservative in general).
//!
//! All comparisons are inclusive, so the anchor itself is always a member.
//! Regions are never enumerated; [`ConfidenceRegion::contains`] is the
//! membership oracle.

use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::numeric::special::std_normal_quantile;
use crate::scalar::Real;

/// Where the parameter lives. Informational; membership never depends on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParameterSpace {
    Euclidean(usize),
    UnitSphere(usize),
    /// Indices `0..d`.
    IndexSet(usize),
    RealLine,
}

/// A loss `m_theta(z)` whose population minimizer is the inferential target.
pub trait LossModel<T: Real>: Sync {
    type Param: Clone + Debug + Send + Sync;
    type Obs: Sync;

    fn loss(&self, theta: &Self::Param, z: &Self::Obs) -> T;

    /// `B0` with `|m_a(z) - m_b(z)| <= B0` for all parameters and observations.
    fn uniform_bound(&self) -> Option<T> {
        None
    }

    /// Upper bound on `-C_P(anchor)` evaluated at `theta`; must be `<= 0`.
    fn curvature_upper(&self, _theta: &Self::Param, _anchor: &Self::Param) -> T {
        T::zero()
    }

    fn parameter_space(&self) -> ParameterSpace;

    fn validate_param(&self, _theta: &Self::Param) -> Result<()> {
        Ok(())
    }

    fn validate_obs(&self, _z: &Self::Obs) -> Result<()> {
        Ok(())
    }
}

/// The two disjoint folds: `d1` for the initial estimator, `d2` for inference.
#[derive(Debug, Clone, Copy)]
pub struct SplitSample<'a, O> {
    pub d1: &'a [O],
    pub d2: &'a [O],
}

impl<O> SplitSample<'_, O> {
    /// Size of the inference fold.
    pub fn n(&self) -> usize {
        self.d2.len()
    }
}

/// Prefix/suffix split: `d1` is the first `floor(ratio * N)` observations.
pub fn split<O>(data: &[O], ratio: f64) -> Result<SplitSample<'_, O>> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::Domain(format!("split ratio must lie in (0,1), got {ratio}")));
    }
    let cut = (ratio * data.len() as f64).floor() as usize;
    let (d1, d2) = data.split_at(cut);
    let smaller = d1.len().min(d2.len());
    if smaller < 2 {
        return Err(Error::InsufficientData { needed: 2, got: smaller });
    }
    Ok(SplitSample { d1, d2 })
}

/// Mean and sample variance of the loss differences `m_theta - m_anchor` on `d2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffStats<T> {
    pub mean: T,
    pub variance: T,
    pub n: usize,
}

fn stats_from_diffs<T: Real>(diffs: impl Iterator<Item = T> + Clone, n: usize) -> DiffStats<T> {
    let nt = T::from_count(n);
    let mean = diffs.clone().fold(T::zero(), |acc, x| acc + x) / nt;
    let variance = if n >= 2 {
        let ss = diffs.fold(T::zero(), |acc, x| acc + (x - mean) * (x - mean));
        (ss / T::from_count(n - 1)).max(T::zero())
    } else {
        T::zero()
    };
    DiffStats { mean, variance, n }
}

pub fn diff_stats<T: Real, M: LossModel<T>>(
    model: &M,
    theta: &M::Param,
    anchor: &M::Param,
    d2: &[M::Obs],
) -> Result<DiffStats<T>> {
    if d2.len() < 2 {
        return Err(Error::InsufficientData { needed: 2, got: d2.len() });
    }
    model.validate_param(theta)?;
    model.validate_param(anchor)?;
    let diffs = d2.iter().map(|z| model.loss(theta, z) - model.loss(anchor, z));
    Ok(stats_from_diffs(diffs, d2.len()))
}

fn check_alpha<T: Real>(alpha: T) -> Result<()> {
    if alpha > T::zero() && alpha < T::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!("miscoverage level must lie in (0,1), got {alpha}")))
    }
}

/// Empirical Bernstein deviation threshold.
pub fn eb_threshold<T: Real>(variance: T, n: usize, alpha: T, b0: T) -> Result<T> {
    check_alpha(alpha)?;
    if n < 2 {
        return Err(Error::InsufficientData { needed: 2, got: n });
    }
    if variance < T::zero() || b0 < T::zero() {
        return Err(Error::Domain("variance and B0 must be non-negative".into()));
    }
    let log_term = (T::lit(2.0) / alpha).ln();
    let nt = T::from_count(n);
    Ok((T::lit(2.0) * variance * log_term / nt).sqrt()
        + T::lit(7.0) * b0 * log_term / (T::lit(3.0) * T::from_count(n - 1)))
}

/// Studentized CLT threshold `z_alpha * sqrt(variance / n)`.
pub fn clt_threshold<T: Real>(variance: T, n: usize, z_alpha: T) -> T {
    z_alpha * variance.sqrt() / T::from_count(n).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    EmpiricalBernstein,
    Clt,
    Naive,
}

/// How to calibrate a region: method, level `alpha` and whether the model's
/// curvature upper bound is used (the bound's own level is fixed at zero).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionSpec<T> {
    pub method: Method,
    pub alpha: T,
    pub use_upper: bool,
}

impl<T: Real> RegionSpec<T> {
    pub fn new(method: Method, alpha: T, use_upper: bool) -> Self {
        Self { method, alpha, use_upper }
    }

    pub fn eb(alpha: T) -> Self {
        Self::new(Method::EmpiricalBernstein, alpha, false)
    }

    pub fn clt(alpha: T) -> Self {
        Self::new(Method::Clt, alpha, false)
    }

    pub fn naive() -> Self {
        Self::new(Method::Naive, T::lit(0.5), false)
    }

    pub fn with_upper(mut self, use_upper: bool) -> Self {
        self.use_upper = use_upper;
        self
    }
}

#[derive(Debug, Clone, Copy)]
enum Threshold<T> {
    Bernstein { log_term: T, b0: T },
    Clt { z: T },
    Naive,
}

/// A calibrated region: the membership oracle plus its anchor and spec.
///
/// Anchor losses on `d2` are computed once at construction.
#[derive(Debug, Clone)]
pub struct ConfidenceRegion<'a, T: Real, M: LossModel<T>> {
    model: &'a M,
    anchor: M::Param,
    d2: &'a [M::Obs],
    anchor_losses: Vec<T>,
    spec: RegionSpec<T>,
    threshold: Threshold<T>,
}

/// Builds the region for `spec` around `anchor` using the inference fold `d2`.
pub fn region<'a, T: Real, M: LossModel<T>>(
    model: &'a M,
    anchor: &M::Param,
    d2: &'a [M::Obs],
    spec: RegionSpec<T>,
) -> Result<ConfidenceRegion<'a, T, M>> {
    let needed = if spec.method == Method::Naive { 1 } else { 2 };
    if d2.len() < needed {
        return Err(Error::InsufficientData { needed, got: d2.len() });
    }
    model.validate_param(anchor)?;
    for z in d2 {
        model.validate_obs(z)?;
    }
    let threshold = match spec.method {
        Method::EmpiricalBernstein => {
            check_alpha(spec.alpha)?;
            let b0 = model
                .uniform_bound()
                .ok_or_else(|| Error::Config("empirical Bernstein region needs a uniformly bounded loss".into()))?;
            Threshold::Bernstein { log_term: (T::lit(2.0) / spec.alpha).ln(), b0 }
        }
        Method::Clt => {
            check_alpha(spec.alpha)?;
            Threshold::Clt { z: std_normal_quantile(T::one() - spec.alpha)? }
        }
        Method::Naive => Threshold::Naive,
    };
    let anchor_losses = d2.iter().map(|z| model.loss(anchor, z)).collect();
    Ok(ConfidenceRegion { model, anchor: anchor.clone(), d2, anchor_losses, spec, threshold })
}

impl<'a, T: Real, M: LossModel<T>> ConfidenceRegion<'a, T, M> {
    pub fn anchor(&self) -> &M::Param {
        &self.anchor
    }

    pub fn n(&self) -> usize {
        self.d2.len()
    }

    pub fn spec(&self) -> &RegionSpec<T> {
        &self.spec
    }

    pub fn diff_stats(&self, theta: &M::Param) -> Result<DiffStats<T>> {
        self.model.validate_param(theta)?;
        let diffs = self.d2.iter().zip(&self.anchor_losses).map(|(z, &a)| self.model.loss(theta, z) - a);
        Ok(stats_from_diffs(diffs, self.d2.len()))
    }

    /// Right-hand side of the membership inequality at `theta`.
    fn allowance(&self, theta: &M::Param, stats: &DiffStats<T>) -> T {
        let n = stats.n;
        let base = match self.threshold {
            Threshold::Bernstein { log_term, b0 } => {
                (T::lit(2.0) * stats.variance * log_term / T::from_count(n)).sqrt()
                    + T::lit(7.0) * b0 * log_term / (T::lit(3.0) * T::from_count(n - 1))
            }
            Threshold::Clt { z } => clt_threshold(stats.variance, n, z),
            Threshold::Naive => return T::zero(),
        };
        if self.spec.use_upper {
            base + self.model.curvature_upper(theta, &self.anchor).min(T::zero())
        } else {
            base
        }
    }

    pub fn contains(&self, theta: &M::Param) -> Result<bool> {
        Ok(self.margin(theta)? >= T::zero())
    }

    /// Allowance minus the mean loss difference; members have a non-negative margin.
    pub fn margin(&self, theta: &M::Param) -> Result<T> {
        let stats = self.diff_stats(theta)?;
        Ok(self.allowance(theta, &stats) - stats.mean)
    }
}

/// Empirical Bernstein membership of `theta`.
pub fn eb_member<T: Real, M: LossModel<T>>(
    model: &M,
    theta: &M::Param,
    anchor: &M::Param,
    d2: &[M::Obs],
    alpha: T,
    use_upper: bool,
) -> Result<bool> {
    region(model, anchor, d2, RegionSpec::eb(alpha).with_upper(use_upper))?.contains(theta)
}

/// CLT membership of `theta`.
pub fn clt_member<T: Real, M: LossModel<T>>(
    model: &M,
    theta: &M::Param,
    anchor: &M::Param,
    d2: &[M::Obs],
    alpha: T,
    use_upper: bool,
) -> Result<bool> {
    region(model, anchor, d2, RegionSpec::clt(alpha).with_upper(use_upper))?.contains(theta)
}

/// Naive membership: `P_n m_theta <= P_n m_anchor`.
pub fn naive_member<T: Real, M: LossModel<T>>(
    model: &M,
    theta: &M::Param,
    anchor: &M::Param,
    d2: &[M::Obs],
) -> Result<bool> {
    region(model, anchor, d2, RegionSpec::naive())?.contains(theta)
}
