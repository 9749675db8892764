//! Frequentist analysis of completed trajectories.

mod metrics;
mod normal;
mod sample_size;
mod wald;

pub use metrics::{aggregate_metrics, Estimate, MetricsSummary};
pub use normal::{normal_cdf, normal_quantile};
pub use sample_size::required_sample_size;
pub use wald::{wald_test, TestResult};

/// Conventional two-sided significance level.
pub const DEFAULT_ALPHA: f64 = 0.05;
/// Conventional power target for sample-size planning.
pub const DEFAULT_POWER: f64 = 0.8;
