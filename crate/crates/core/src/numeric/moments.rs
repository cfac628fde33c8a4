use crate::error::{check_dim, Error, Result};
use crate::numeric::linalg::SymMatrix;
use crate::scalar::Real;

/// Coordinate-wise sample mean of equally sized vectors.
pub fn sample_mean<T: Real, V: AsRef<[T]>>(data: &[V]) -> Result<Vec<T>> {
    let first = data.first().ok_or(Error::InsufficientData { needed: 1, got: 0 })?;
    let d = first.as_ref().len();
    let mut mean = vec![T::zero(); d];
    for x in data {
        let x = x.as_ref();
        check_dim(d, x.len())?;
        for (m, &v) in mean.iter_mut().zip(x) {
            *m = *m + v;
        }
    }
    let inv_n = T::from_count(data.len()).recip();
    mean.iter_mut().for_each(|m| *m = *m * inv_n);
    Ok(mean)
}

/// Sample mean and the `(N-1)`-denominator sample covariance.
pub fn sample_moments<T: Real, V: AsRef<[T]>>(data: &[V]) -> Result<(Vec<T>, SymMatrix<T>)> {
    if data.len() < 2 {
        return Err(Error::InsufficientData { needed: 2, got: data.len() });
    }
    let mean = sample_mean(data)?;
    let d = mean.len();
    let mut upper = vec![T::zero(); d * d];
    let mut centered = vec![T::zero(); d];
    for x in data {
        for ((c, &v), &m) in centered.iter_mut().zip(x.as_ref()).zip(&mean) {
            *c = v - m;
        }
        for i in 0..d {
            let ci = centered[i];
            let row = &mut upper[i * d..(i + 1) * d];
            for j in i..d {
                row[j] = row[j] + ci * centered[j];
            }
        }
    }
    let inv = T::from_count(data.len() - 1).recip();
    let cov = SymMatrix::from_upper(d, |i, j| upper[i * d + j] * inv);
    Ok((mean, cov))
}

/// Mean and `(n-1)`-denominator variance of a scalar sample, two-pass.
pub fn mean_variance<T: Real>(values: &[T]) -> Result<(T, T)> {
    let n = values.len();
    if n < 2 {
        return Err(Error::InsufficientData { needed: 2, got: n });
    }
    let mean = values.iter().fold(T::zero(), |acc, &x| acc + x) / T::from_count(n);
    let ss = values.iter().fold(T::zero(), |acc, &x| acc + (x - mean) * (x - mean));
    let var = (ss / T::from_count(n - 1)).max(T::zero());
    Ok((mean, var))
}
