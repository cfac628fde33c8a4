//! Manski's binary choice model and the maximum score estimator.

use crate::applications::linreg::LabeledPoint;
use crate::error::{check_dim, Error, Result};
use crate::inference::{LossModel, ParameterSpace};
use crate::numeric::linalg::{dot, norm};
use crate::numeric::RngStream;
use crate::scalar::Real;

/// Loss differences never exceed this in absolute value.
pub const MANSKI_BOUND: f64 = 2.0;

/// `m_theta(y, x) = -y sgn(theta'x)` on the unit sphere, with `sgn(0) = +1`.
#[derive(Debug, Clone, Copy)]
pub struct ManskiModel {
    pub dim: usize,
}

impl ManskiModel {
    pub fn new(dim: usize) -> Self {
        Self { dim }
    }
}

#[inline]
fn sgn<T: Real>(t: T) -> T {
    if t >= T::zero() {
        T::one()
    } else {
        -T::one()
    }
}

fn check_label<T: Real>(y: T) -> Result<()> {
    if y == T::one() || y == -T::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!("binary response must be -1 or +1, got {y}")))
    }
}

fn check_unit<T: Real>(theta: &[T]) -> Result<()> {
    let tol = T::lit(1e-8).max(T::epsilon() * T::lit(100.0));
    if (norm(theta) - T::one()).abs() <= tol {
        Ok(())
    } else {
        Err(Error::Domain("Manski parameter must have unit norm".into()))
    }
}

pub fn manski_loss<T: Real>(theta: &[T], z: &LabeledPoint<T>) -> Result<T> {
    check_dim(theta.len(), z.x.len())?;
    check_label(z.y)?;
    check_unit(theta)?;
    Ok(-z.y * sgn(dot(theta, &z.x)))
}

impl<T: Real> LossModel<T> for ManskiModel {
    type Param = Vec<T>;
    type Obs = LabeledPoint<T>;

    fn loss(&self, theta: &Vec<T>, z: &LabeledPoint<T>) -> T {
        -z.y * sgn(dot(theta, &z.x))
    }

    fn uniform_bound(&self) -> Option<T> {
        Some(T::lit(MANSKI_BOUND))
    }

    fn parameter_space(&self) -> ParameterSpace {
        ParameterSpace::UnitSphere(self.dim)
    }

    fn validate_param(&self, theta: &Vec<T>) -> Result<()> {
        check_dim(self.dim, theta.len())?;
        check_unit(theta)
    }

    fn validate_obs(&self, z: &LabeledPoint<T>) -> Result<()> {
        check_dim(self.dim, z.x.len())?;
        check_label(z.y)
    }
}

/// Maximum score objective `sum_i y_i sgn(theta'x_i)`.
pub fn score<T: Real>(theta: &[T], data: &[LabeledPoint<T>]) -> i64 {
    data.iter()
        .map(|z| {
            let s = if dot(theta, &z.x) >= T::zero() { 1 } else { -1 };
            if z.y > T::zero() {
                s
            } else {
                -s
            }
        })
        .sum()
}

fn normalized<T: Real>(v: &[T]) -> Vec<T> {
    let n = norm(v);
    v.iter().map(|&x| x / n).collect()
}

/// Refinement samples per grid cell in two dimensions.
const REFINE_STEPS: usize = 64;

/// Approximate maximum score estimator.
///
/// In two dimensions: `n_grid` equally spaced angles, then a finer pass over
/// the two cells adjacent to the best angle. In higher dimensions: the best of
/// `n_restarts` random unit directions, each improved by coordinate moves with
/// a halving step. Ties keep the first candidate found.
pub fn max_score_fit<T: Real>(
    d1: &[LabeledPoint<T>],
    n_grid: usize,
    n_restarts: usize,
    rng: &mut RngStream,
) -> Result<Vec<T>> {
    let first = d1.first().ok_or(Error::InsufficientData { needed: 1, got: 0 })?;
    let d = first.x.len();
    if d < 2 {
        return Err(Error::Domain("maximum score needs at least two covariates".into()));
    }
    for z in d1 {
        check_dim(d, z.x.len())?;
        check_label(z.y)?;
    }
    if d == 2 {
        if n_grid == 0 {
            return Err(Error::Config("angle grid must be non-empty".into()));
        }
        return Ok(fit_planar(d1, n_grid));
    }
    if n_restarts == 0 {
        return Err(Error::Config("need at least one restart".into()));
    }
    let mut best: Option<(i64, Vec<T>)> = None;
    for _ in 0..n_restarts {
        let mut start = vec![T::zero(); d];
        rng.fill_standard_normal(&mut start);
        if norm(&start) == T::zero() {
            start[0] = T::one();
        }
        let candidate = coordinate_ascent(d1, normalized(&start));
        if best.as_ref().is_none_or(|(s, _)| candidate.0 > *s) {
            best = Some(candidate);
        }
    }
    Ok(best.expect("at least one restart").1)
}

fn fit_planar<T: Real>(d1: &[LabeledPoint<T>], n_grid: usize) -> Vec<T> {
    let at = |phi: f64| vec![T::lit(phi.cos()), T::lit(phi.sin())];
    let cell = std::f64::consts::TAU / n_grid as f64;
    let mut best_phi = 0.0;
    let mut best = i64::MIN;
    for k in 0..n_grid {
        let phi = cell * k as f64;
        let s = score(&at(phi), d1);
        if s > best {
            best = s;
            best_phi = phi;
        }
    }
    let center = best_phi;
    for k in 0..=2 * REFINE_STEPS {
        let phi = center - cell + cell * k as f64 / REFINE_STEPS as f64;
        let s = score(&at(phi), d1);
        if s > best {
            best = s;
            best_phi = phi;
        }
    }
    at(best_phi)
}

fn coordinate_ascent<T: Real>(d1: &[LabeledPoint<T>], start: Vec<T>) -> (i64, Vec<T>) {
    let d = start.len();
    let mut theta = start;
    let mut best = score(&theta, d1);
    let mut step = T::lit(0.5);
    while step >= T::lit(1e-3) {
        let mut improved = false;
        for j in 0..d {
            for sign in [T::one(), -T::one()] {
                let mut cand = theta.clone();
                cand[j] = cand[j] + sign * step;
                if norm(&cand) == T::zero() {
                    continue;
                }
                let cand = normalized(&cand);
                let s = score(&cand, d1);
                if s > best {
                    best = s;
                    theta = cand;
                    improved = true;
                }
            }
        }
        if !improved {
            step = step * T::lit(0.5);
        }
    }
    (best, theta)
}
