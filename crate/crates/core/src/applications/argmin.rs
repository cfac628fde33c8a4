//! Index of the smallest marginal mean. Indices are zero based.

use crate::error::{check_dim, Error, Result};
use crate::inference::{region, LossModel, ParameterSpace, RegionSpec};
use crate::numeric::sample_mean;
use crate::scalar::Real;

/// `m_j(x) = x_j` over `j in 0..dim`.
#[derive(Debug, Clone, Copy)]
pub struct ArgminModel {
    pub dim: usize,
}

impl ArgminModel {
    pub fn new(dim: usize) -> Self {
        Self { dim }
    }
}

pub fn argmin_loss<T: Real>(j: usize, x: &[T]) -> Result<T> {
    x.get(j).copied().ok_or_else(|| Error::Domain(format!("index {j} out of range for dimension {}", x.len())))
}

impl<T: Real> LossModel<T> for ArgminModel {
    type Param = usize;
    type Obs = Vec<T>;

    fn loss(&self, j: &usize, z: &Vec<T>) -> T {
        z[*j]
    }

    fn parameter_space(&self) -> ParameterSpace {
        ParameterSpace::IndexSet(self.dim)
    }

    fn validate_param(&self, j: &usize) -> Result<()> {
        if *j < self.dim {
            Ok(())
        } else {
            Err(Error::Domain(format!("index {j} out of range for dimension {}", self.dim)))
        }
    }

    fn validate_obs(&self, z: &Vec<T>) -> Result<()> {
        check_dim(self.dim, z.len())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgminRegion {
    /// Smallest index minimizing the first-fold coordinate means.
    pub anchor: usize,
    /// Members in increasing order.
    pub members: Vec<usize>,
}

/// CLT confidence set for the argmin index.
pub fn argmin_region<T: Real>(d1: &[Vec<T>], d2: &[Vec<T>], alpha: T) -> Result<ArgminRegion> {
    let means = sample_mean(d1)?;
    let d = means.len();
    if d < 1 {
        return Err(Error::Domain("argmin needs at least one coordinate".into()));
    }
    let mut anchor = 0;
    for (j, &m) in means.iter().enumerate() {
        if m < means[anchor] {
            anchor = j;
        }
    }
    let model = ArgminModel::new(d);
    let r = region(&model, &anchor, d2, RegionSpec::clt(alpha))?;
    let mut members = Vec::new();
    for j in 0..d {
        if r.contains(&j)? {
            members.push(j);
        }
    }
    Ok(ArgminRegion { anchor, members })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::substream;

    #[test]
    fn loss_examples() {
        assert_eq!(argmin_loss(0, &[3.0, 5.0]).unwrap(), 3.0);
        let x = [1.5, -2.0, 4.0];
        assert_eq!(argmin_loss(0, &x).unwrap() - argmin_loss(1, &x).unwrap(), 3.5);
        assert_eq!(argmin_loss(2, &x).unwrap() - argmin_loss(2, &x).unwrap(), 0.0);
        assert!(argmin_loss(3, &x).is_err());
    }

    fn gaussian_rows(n: usize, means: &[f64], seed: u64) -> Vec<Vec<f64>> {
        let mut rng = substream(seed, &[0]);
        (0..n)
            .map(|_| {
                let mut x = vec![0.0; means.len()];
                rng.fill_standard_normal(&mut x);
                x.iter().zip(means).map(|(a, b)| a + b).collect()
            })
            .collect()
    }

    #[test]
    fn duplicated_columns_are_both_members() {
        let rows: Vec<Vec<f64>> =
            gaussian_rows(100, &[0.0, 0.5], 1).into_iter().map(|x| vec![x[0], x[0], x[1]]).collect();
        let (d1, d2) = rows.split_at(50);
        let r = argmin_region(d1, d2, 0.05).unwrap();
        assert!(r.members.contains(&r.anchor));
        if r.anchor == 0 {
            assert!(r.members.contains(&1));
        }
        // Ties go to the smallest index.
        assert_ne!(r.anchor, 1);
    }

    #[test]
    fn far_coordinate_is_excluded() {
        let rows = gaussian_rows(1000, &[0.0, 0.2, 10.0], 2);
        let (d1, d2) = rows.split_at(500);
        let r = argmin_region(d1, d2, 0.05).unwrap();
        assert_eq!(r.anchor, 0);
        assert!(!r.members.contains(&2));
    }

    #[test]
    fn empty_fold_is_an_error() {
        let empty: Vec<Vec<f64>> = vec![];
        assert!(argmin_region(&empty, &[vec![1.0], vec![2.0]], 0.05).is_err());
    }
}
