//! Honest sample-splitting confidence sets for M-estimation.
//!
//! The crate is organised bottom up:
//!
//! * [`numeric`]: special functions, Cholesky and Jacobi, sample moments and
//!   keyed random streams;
//! * [`inference`]: splitting, loss-difference statistics and the empirical
//!   Bernstein, CLT and naive membership oracles;
//! * [`applications`]: mean, linear regression, Manski, quantile and argmin models;
//! * [`wald`]: the Wald ellipsoid used as a baseline;
//! * [`experiments`]: the deterministic Monte Carlo harness;
//! * [`cli`]: argument parsing and CSV output for the `splitci` binary.
//!
//! Everything up to [`wald`] is generic over [`Real`]; the harness runs in `f64`.

// `!(x > 0)` rejects NaN as well; the Lanczos table keeps its published digits.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod applications;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod inference;
pub mod numeric;
pub mod scalar;
pub mod wald;

pub use error::{Error, Result};
pub use scalar::Real;

pub type SymMatrix64 = numeric::SymMatrix<f64>;
pub type Matrix64 = numeric::Matrix<f64>;
pub type WaldRegion64 = wald::WaldRegion<f64>;
pub type RegionSpec64 = inference::RegionSpec<f64>;
pub type QuantileModel64 = applications::QuantileModel<f64>;
pub type LabeledPoint64 = applications::LabeledPoint<f64>;
