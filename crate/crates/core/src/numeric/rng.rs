//! Keyed random streams.
//!
//! A stream is identified by a master seed and a key (a short list of integers
//! such as experiment id, replication index and purpose tag). The key is hashed
//! into a ChaCha8 seed, and ChaCha is counter based, so every output is a pure
//! function of `(master_seed, key, counter)`. Replications therefore draw the
//! same numbers regardless of which worker runs them or in what order.
//!
//! Normal variates use the Box-Muller transform; both members of each pair
//! are used, in order.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_dim, Result};
use crate::numeric::linalg::Matrix;
use crate::scalar::Real;

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic random stream for one `(master_seed, key)` pair.
#[derive(Debug, Clone)]
pub struct RngStream {
    rng: ChaCha8Rng,
}

/// Derives the stream for `key` under `master_seed`.
pub fn substream(master_seed: u64, key: &[u64]) -> RngStream {
    let mut h = splitmix64(master_seed ^ 0x5EED_5EED_5EED_5EED);
    h = splitmix64(h ^ key.len() as u64);
    for &k in key {
        h = splitmix64(h ^ splitmix64(k));
    }
    let mut seed = [0u8; 32];
    let mut state = h;
    for chunk in seed.chunks_exact_mut(8) {
        state = splitmix64(state);
        chunk.copy_from_slice(&state.to_le_bytes());
    }
    RngStream { rng: ChaCha8Rng::from_seed(seed) }
}

impl RngStream {
    /// Position in the underlying ChaCha block stream, in 32-bit words.
    pub fn counter(&self) -> u128 {
        self.rng.get_word_pos()
    }

    /// Moves to an absolute counter position.
    pub fn seek(&mut self, counter: u128) {
        self.rng.set_word_pos(counter);
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on the open interval (0, 1).
    pub fn uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform index in `0..n` (`n > 0`).
    pub fn index(&mut self, n: usize) -> usize {
        ((self.uniform() * n as f64) as usize).min(n - 1)
    }

    /// Two independent standard normals (Box-Muller).
    pub fn normal_pair(&mut self) -> (f64, f64) {
        let u1 = self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
        (r * c, r * s)
    }

    pub fn standard_normal(&mut self) -> f64 {
        self.normal_pair().0
    }

    /// Fills `out` with standard normals, consuming pairs in order.
    pub fn fill_standard_normal<T: Real>(&mut self, out: &mut [T]) {
        let mut chunks = out.chunks_exact_mut(2);
        for pair in &mut chunks {
            let (a, b) = self.normal_pair();
            pair[0] = T::lit(a);
            pair[1] = T::lit(b);
        }
        if let [last] = chunks.into_remainder() {
            *last = T::lit(self.normal_pair().0);
        }
    }

    /// Standard logistic variate by inversion.
    pub fn logistic(&mut self) -> f64 {
        let u = self.uniform();
        (u / (1.0 - u)).ln()
    }
}

/// Draws `mean + L g` with `g` standard normal.
pub fn mvn_sample<T: Real>(mean: &[T], chol_factor: &Matrix<T>, rng: &mut RngStream) -> Result<Vec<T>> {
    let d = mean.len();
    check_dim(d, chol_factor.rows())?;
    check_dim(d, chol_factor.cols())?;
    let mut g = vec![T::zero(); d];
    rng.fill_standard_normal(&mut g);
    let lg = chol_factor.mul_vec(&g)?;
    Ok(mean.iter().zip(lg).map(|(&m, v)| m + v).collect())
}
