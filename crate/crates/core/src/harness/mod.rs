//! Seeded Monte-Carlo simulation of adaptive experiments.

mod config;
mod experiment;
mod simulate;

pub use config::{ExperimentConfig, DEFAULT_PHI_SAMPLES, DEFAULT_SEED, DEFAULT_SIMS};
pub use experiment::{
    phi_curve, run_experiment, run_experiment_with_workers, sweep, Experiment, PhiPoint, SweepRow,
};
pub use simulate::{run_simulation, BranchCounts, SimulationResult, TraceStep};
