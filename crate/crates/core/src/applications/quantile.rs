//! Quantile estimation with the pinball loss.

use crate::error::{Error, Result};
use crate::inference::{region, LossModel, ParameterSpace, RegionSpec};
use crate::scalar::Real;

/// `m_theta(x) = gamma (x - theta)_+ + (1 - gamma)(theta - x)_+`.
#[derive(Debug, Clone, Copy)]
pub struct QuantileModel<T> {
    pub gamma: T,
}

impl<T: Real> QuantileModel<T> {
    pub fn new(gamma: T) -> Result<Self> {
        if gamma > T::zero() && gamma < T::one() {
            Ok(Self { gamma })
        } else {
            Err(Error::Domain(format!("quantile level must lie in (0,1), got {gamma}")))
        }
    }
}

#[inline]
pub fn quantile_loss<T: Real>(theta: T, x: T, gamma: T) -> T {
    gamma * (x - theta).max(T::zero()) + (T::one() - gamma) * (theta - x).max(T::zero())
}

impl<T: Real> LossModel<T> for QuantileModel<T> {
    type Param = T;
    type Obs = T;

    fn loss(&self, theta: &T, z: &T) -> T {
        quantile_loss(*theta, *z, self.gamma)
    }

    fn parameter_space(&self) -> ParameterSpace {
        ParameterSpace::RealLine
    }
}

/// Type-1 sample quantile: the order statistic of rank `ceil(gamma * n)`.
pub fn sample_quantile<T: Real>(data: &[T], gamma: T) -> Result<T> {
    if data.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    if !(gamma > T::zero() && gamma < T::one()) {
        return Err(Error::Domain(format!("quantile level must lie in (0,1), got {gamma}")));
    }
    let n = data.len();
    let target = gamma.to_f64_lossy() * n as f64;
    // Absorb representation error such as 0.1 * 30 = 3.0000000000000004.
    let rank = ((target - 1e-9).ceil() as usize).clamp(1, n);
    let mut sorted = data.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite data"));
    Ok(sorted[rank - 1])
}

/// `[min - range, max + range]` of `data`.
pub fn scan_extent<T: Real>(data: &[T]) -> Result<(T, T)> {
    let first = *data.first().ok_or(Error::InsufficientData { needed: 1, got: 0 })?;
    let (lo, hi) = data.iter().fold((first, first), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    let range = hi - lo;
    Ok((lo - range, hi + range))
}

/// Result of scanning a one-dimensional region on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantileScan<T> {
    /// Smallest member (grid points and the anchor).
    pub lo: T,
    /// Largest member.
    pub hi: T,
    pub members: usize,
    /// Grid non-members strictly between the outermost members.
    pub interior_gaps: usize,
}

impl<T: Real> QuantileScan<T> {
    pub fn width(&self) -> T {
        self.hi - self.lo
    }
}

/// Scans `resolution` equally spaced points of `[lo, hi]` and reports the
/// hull of the members. The anchor is always evaluated as well.
pub fn quantile_region_scan<T: Real>(
    model: &QuantileModel<T>,
    anchor: T,
    d2: &[T],
    spec: RegionSpec<T>,
    (lo, hi): (T, T),
    resolution: usize,
) -> Result<QuantileScan<T>> {
    if resolution < 2 || !(hi > lo) {
        return Err(Error::Config("scan grid needs at least two points on a non-empty interval".into()));
    }
    let r = region(model, &anchor, d2, spec)?;
    let step = (hi - lo) / T::from_count(resolution - 1);
    let mut flags = Vec::with_capacity(resolution);
    for k in 0..resolution {
        let theta = lo + step * T::from_count(k);
        flags.push(r.contains(&theta)?);
    }
    let mut hull_lo = anchor;
    let mut hull_hi = anchor;
    let mut members = 0;
    let first = flags.iter().position(|&f| f);
    let last = flags.iter().rposition(|&f| f);
    let mut interior_gaps = 0;
    if let (Some(a), Some(b)) = (first, last) {
        hull_lo = hull_lo.min(lo + step * T::from_count(a));
        hull_hi = hull_hi.max(lo + step * T::from_count(b));
        members = flags.iter().filter(|&&f| f).count();
        interior_gaps = flags[a..=b].iter().filter(|&&f| !f).count();
    }
    Ok(QuantileScan { lo: hull_lo, hi: hull_hi, members, interior_gaps })
}
