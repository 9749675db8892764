//! Adaptive two-arm experiments with Bernoulli outcomes.
//!
//! The crate covers the full loop of a simulated adaptive experiment:
//!
//! * [`model`]: the environment, Beta posteriors and their conjugate update;
//! * [`rng`]: keyed, reproducible random streams;
//! * [`policy`]: uniform, greedy and Thompson-sampling allocation rules,
//!   including ε-mixtures, top-two TS, TS PostDiff and probability clipping;
//! * [`analysis`]: the Wald z-test, sample-size planning and batch metrics
//!   (false positive rate, power, Type-S error, reward, allocation shares);
//! * [`harness`]: seeded, parallel Monte-Carlo batches, sweeps and φ̂ curves.
//!
//! ```
//! use tsmix_core::{run_experiment, ExperimentConfig, PolicyConfig};
//!
//! let config = ExperimentConfig::new(PolicyConfig::TsPostDiff { c: 0.1 }, 0.1, 197).with_sims(200);
//! let experiment = run_experiment(&config).unwrap();
//! assert!(experiment.summary.power().is_some());
//! ```

pub mod analysis;
pub mod error;
pub mod harness;
pub mod model;
pub mod policy;
pub mod rng;

pub use analysis::{
    aggregate_metrics, normal_cdf, normal_quantile, required_sample_size, wald_test, Estimate,
    MetricsSummary, TestResult,
};
pub use error::{Error, Result};
pub use harness::{
    phi_curve, run_experiment, run_experiment_with_workers, run_simulation, sweep,
    ExperimentConfig, SimulationResult,
};
pub use model::{posterior_update, Arm, ArmPosterior, Environment};
pub use policy::{
    prob_first_arm_beats_second, ArmChoice, Branch, PolicyConfig, PolicyKind, PolicyState,
};
pub use rng::{sample_beta, RngStream};
