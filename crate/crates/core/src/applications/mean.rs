//! Mean estimation under squared loss.

use crate::error::{check_dim, Result};
use crate::inference::{LossModel, ParameterSpace};
use crate::numeric::linalg::{dot, norm, norm_sq, sub_vec, SymMatrix};
use crate::numeric::special::std_normal_quantile;
use crate::numeric::sym_eigenvalues;
use crate::scalar::Real;

/// `m_theta(x) = |x - theta|^2`. The curvature is exactly `|theta - theta(P)|^2`,
/// so `-|anchor - theta|^2` is a valid upper bound with level zero.
#[derive(Debug, Clone, Copy)]
pub struct MeanModel {
    pub dim: usize,
}

impl MeanModel {
    pub fn new(dim: usize) -> Self {
        Self { dim }
    }
}

#[inline]
fn sq_dist<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + (x - y) * (x - y))
}

pub fn mean_loss<T: Real>(theta: &[T], x: &[T]) -> Result<T> {
    check_dim(theta.len(), x.len())?;
    Ok(sq_dist(x, theta))
}

impl<T: Real> LossModel<T> for MeanModel {
    type Param = Vec<T>;
    type Obs = Vec<T>;

    fn loss(&self, theta: &Vec<T>, z: &Vec<T>) -> T {
        sq_dist(z, theta)
    }

    fn curvature_upper(&self, theta: &Vec<T>, anchor: &Vec<T>) -> T {
        -sq_dist(anchor, theta)
    }

    fn parameter_space(&self) -> ParameterSpace {
        ParameterSpace::Euclidean(self.dim)
    }

    fn validate_param(&self, theta: &Vec<T>) -> Result<()> {
        check_dim(self.dim, theta.len())
    }

    fn validate_obs(&self, z: &Vec<T>) -> Result<()> {
        check_dim(self.dim, z.len())
    }
}

/// Closed form of the CLT region with the curvature bound for the mean:
/// `(xbar - theta)'(anchor - theta) <= z_alpha |anchor - theta|_S / sqrt(n)`.
///
/// `xbar` and `cov` are the mean and sample covariance of the inference fold.
pub fn ssu_member_closed<T: Real>(
    theta: &[T],
    anchor: &[T],
    xbar: &[T],
    cov: &SymMatrix<T>,
    n: usize,
    alpha: T,
) -> Result<bool> {
    let d = theta.len();
    check_dim(d, anchor.len())?;
    check_dim(d, xbar.len())?;
    check_dim(d, cov.dim())?;
    let z = std_normal_quantile(T::one() - alpha)?;
    let to_anchor = sub_vec(anchor, theta);
    let lhs = dot(&sub_vec(xbar, theta), &to_anchor);
    let spread = cov.quad_form(&to_anchor)?.max(T::zero()).sqrt();
    Ok(lhs <= z * spread / T::from_count(n).sqrt())
}

/// Radius `h` of a ball around `anchor` containing the closed-form region:
/// `z_alpha sqrt(lambda_max(S) / n) + |anchor - xbar|`.
pub fn radius_bound<T: Real>(anchor: &[T], xbar: &[T], cov: &SymMatrix<T>, n: usize, alpha: T) -> Result<T> {
    check_dim(anchor.len(), xbar.len())?;
    check_dim(anchor.len(), cov.dim())?;
    let z = std_normal_quantile(T::one() - alpha)?;
    let lambda_max = sym_eigenvalues(cov)?.last().copied().unwrap_or(T::zero()).max(T::zero());
    Ok(z * lambda_max.sqrt() / T::from_count(n).sqrt() + norm(&sub_vec(anchor, xbar)))
}

/// `|a - b|^2`, exposed for the harness.
pub fn squared_distance<T: Real>(a: &[T], b: &[T]) -> T {
    norm_sq(&sub_vec(a, b))
}
