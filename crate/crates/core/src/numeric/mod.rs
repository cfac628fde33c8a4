//! Self-contained numerics used by the confidence sets and the harness.

pub mod linalg;
pub mod moments;
pub mod rng;
pub mod special;

pub use linalg::{cholesky_solve, sym_eigen, sym_eigenvalues, Cholesky, Matrix, SymEigen, SymMatrix};
pub use moments::{mean_variance, sample_mean, sample_moments};
pub use rng::{mvn_sample, substream, RngStream};
pub use special::{chi_square_quantile, log_gamma, std_normal_cdf, std_normal_quantile};
