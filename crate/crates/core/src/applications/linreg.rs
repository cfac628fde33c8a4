//! Best linear predictor under squared loss, without assuming the model is linear.

use crate::error::{check_dim, Error, Result};
use crate::inference::{LossModel, ParameterSpace};
use crate::numeric::linalg::{dot, Cholesky, SymMatrix};
use crate::scalar::Real;

/// Response `y` with covariates `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPoint<T> {
    pub y: T,
    pub x: Vec<T>,
}

impl<T> LabeledPoint<T> {
    pub fn new(y: T, x: Vec<T>) -> Self {
        Self { y, x }
    }
}

/// `m_theta(y, x) = (y - theta'x)^2`.
#[derive(Debug, Clone, Copy)]
pub struct LinRegModel {
    pub dim: usize,
}

impl LinRegModel {
    pub fn new(dim: usize) -> Self {
        Self { dim }
    }
}

pub fn linreg_loss<T: Real>(theta: &[T], z: &LabeledPoint<T>) -> Result<T> {
    check_dim(theta.len(), z.x.len())?;
    let r = z.y - dot(theta, &z.x);
    Ok(r * r)
}

impl<T: Real> LossModel<T> for LinRegModel {
    type Param = Vec<T>;
    type Obs = LabeledPoint<T>;

    fn loss(&self, theta: &Vec<T>, z: &LabeledPoint<T>) -> T {
        let r = z.y - dot(theta, &z.x);
        r * r
    }

    fn parameter_space(&self) -> ParameterSpace {
        ParameterSpace::Euclidean(self.dim)
    }

    fn validate_param(&self, theta: &Vec<T>) -> Result<()> {
        check_dim(self.dim, theta.len())
    }

    fn validate_obs(&self, z: &LabeledPoint<T>) -> Result<()> {
        check_dim(self.dim, z.x.len())
    }
}

/// Ordinary least squares through the normal equations `(X'X) theta = X'y`.
pub fn ols_fit<T: Real>(d1: &[LabeledPoint<T>]) -> Result<Vec<T>> {
    let d = d1.first().ok_or(Error::InsufficientData { needed: 1, got: 0 })?.x.len();
    if d1.len() < d {
        return Err(Error::InsufficientData { needed: d, got: d1.len() });
    }
    let mut gram = vec![T::zero(); d * d];
    let mut xty = vec![T::zero(); d];
    for z in d1 {
        check_dim(d, z.x.len())?;
        for i in 0..d {
            xty[i] = xty[i] + z.x[i] * z.y;
            for j in i..d {
                gram[i * d + j] = gram[i * d + j] + z.x[i] * z.x[j];
            }
        }
    }
    let gram = SymMatrix::from_upper(d, |i, j| gram[i * d + j]);
    Cholesky::new(&gram).map_err(|_| Error::Domain("gram matrix is singular".into()))?.solve(&xty)
}
