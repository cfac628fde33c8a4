//! Loss models for the worked applications, their initial estimators and
//! the closed-form specializations available for the mean.

pub mod argmin;
pub mod linreg;
pub mod manski;
pub mod mean;
pub mod quantile;

pub use argmin::{argmin_loss, argmin_region, ArgminModel, ArgminRegion};
pub use linreg::{linreg_loss, ols_fit, LabeledPoint, LinRegModel};
pub use manski::{manski_loss, max_score_fit, score, ManskiModel};
pub use mean::{mean_loss, radius_bound, ssu_member_closed, MeanModel};
pub use quantile::{quantile_loss, quantile_region_scan, sample_quantile, QuantileModel, QuantileScan};
