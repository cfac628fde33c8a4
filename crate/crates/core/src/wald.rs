//! Wald ellipsoid `{theta : (theta - xbar)' S^{-1} (theta - xbar) <= chi2_{d,alpha} / N}`
//! and its volume.

use crate::error::{check_dim, Error, Result};
use crate::numeric::linalg::{sub_vec, Cholesky, SymMatrix};
use crate::numeric::special::{chi_square_quantile, log_gamma};
use crate::numeric::{sample_moments, sym_eigenvalues};
use crate::scalar::Real;

/// Immutable Wald region; the covariance factor is computed once.
#[derive(Debug, Clone)]
pub struct WaldRegion<T> {
    center: Vec<T>,
    cov: SymMatrix<T>,
    chol: Cholesky<T>,
    n: usize,
    alpha: T,
    chi2: T,
}

impl<T: Real> WaldRegion<T> {
    /// Fails when the covariance is not positive definite (e.g. `d >= N`).
    pub fn new(center: Vec<T>, cov: SymMatrix<T>, n: usize, alpha: T) -> Result<Self> {
        check_dim(center.len(), cov.dim())?;
        if !(alpha > T::zero() && alpha < T::one()) {
            return Err(Error::Domain(format!("miscoverage level must lie in (0,1), got {alpha}")));
        }
        if n == 0 {
            return Err(Error::InsufficientData { needed: 1, got: 0 });
        }
        let chol = Cholesky::new(&cov)?;
        let chi2 = chi_square_quantile(center.len(), T::one() - alpha)?;
        Ok(Self { center, cov, chol, n, alpha, chi2 })
    }

    /// Region from the sample mean and covariance of `data`.
    pub fn from_sample<V: AsRef<[T]>>(data: &[V], alpha: T) -> Result<Self> {
        let (mean, cov) = sample_moments(data)?;
        Self::new(mean, cov, data.len(), alpha)
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn center(&self) -> &[T] {
        &self.center
    }

    pub fn covariance(&self) -> &SymMatrix<T> {
        &self.cov
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// `chi2_{d,alpha} / N`.
    pub fn threshold(&self) -> T {
        self.chi2 / T::from_count(self.n)
    }

    /// `(theta - xbar)' S^{-1} (theta - xbar)`.
    pub fn quad_form(&self, theta: &[T]) -> Result<T> {
        check_dim(self.dim(), theta.len())?;
        self.chol.inverse_quad_form(&sub_vec(theta, &self.center))
    }

    pub fn contains(&self, theta: &[T]) -> Result<bool> {
        Ok(self.quad_form(theta)? <= self.threshold())
    }

    /// Semi-axes `sqrt(chi2 / N * lambda_k)`, ascending.
    pub fn semi_axes(&self) -> Result<Vec<T>> {
        let t = self.threshold();
        Ok(sym_eigenvalues(&self.cov)?.into_iter().map(|l| (t * l.max(T::zero())).sqrt()).collect())
    }

    /// Log volume from the semi-axes.
    pub fn log_volume(&self) -> Result<T> {
        let axes = self.semi_axes()?;
        Ok(log_unit_ball_volume::<T>(self.dim())? + axes.iter().fold(T::zero(), |acc, r| acc + r.ln()))
    }

    /// Log volume from `det S` through the Cholesky factor.
    pub fn log_volume_from_determinant(&self) -> Result<T> {
        let d = T::from_count(self.dim());
        Ok(log_unit_ball_volume::<T>(self.dim())? + T::lit(0.5) * (d * self.threshold().ln() + self.chol.log_det()))
    }

    pub fn volume(&self) -> Result<T> {
        let lv = self.log_volume()?;
        let v = lv.exp();
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Domain(format!("volume overflows; log volume is {lv}")))
        }
    }
}

/// `ln(pi^{d/2} / Gamma(d/2 + 1))`.
pub fn log_unit_ball_volume<T: Real>(d: usize) -> Result<T> {
    let half_d = T::from_count(d) * T::lit(0.5);
    Ok(half_d * T::PI().ln() - log_gamma(half_d + T::one())?)
}

/// Ratio of a radius to the geometric mean of the semi-axes.
pub fn axis_ratio<T: Real>(h: T, semi_axes: &[T]) -> Result<T> {
    if semi_axes.is_empty() {
        return Err(Error::Domain("no semi-axes".into()));
    }
    if !(h > T::zero()) || semi_axes.iter().any(|&r| !(r > T::zero())) {
        return Err(Error::Domain("radius and semi-axes must be positive".into()));
    }
    let mean_log = semi_axes.iter().fold(T::zero(), |acc, r| acc + r.ln()) / T::from_count(semi_axes.len());
    Ok((h.ln() - mean_log).exp())
}
