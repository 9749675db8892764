//! Shared fixtures for the criterion benchmarks.

use tsmix_core::policy::EpsilonSchedule;
use tsmix_core::{ArmPosterior, PolicyConfig, PolicyState};

/// Posteriors after roughly 400 participants of a w = 0.1 experiment.
pub fn mid_experiment_state() -> PolicyState {
    PolicyState::from_counts([260, 140], [143, 63]).expect("valid counts")
}

/// Posterior pair at the end of a long run, the expensive case for the exact sum.
pub fn late_posteriors() -> (ArmPosterior, ArmPosterior) {
    (
        ArmPosterior::from_counts(600, 330),
        ArmPosterior::from_counts(185, 83),
    )
}

/// One representative configuration of every policy family.
pub fn policies() -> Vec<PolicyConfig> {
    vec![
        PolicyConfig::UniformRandom,
        PolicyConfig::ThompsonSampling,
        PolicyConfig::Greedy,
        PolicyConfig::EpsilonTs { epsilon: 0.1 },
        PolicyConfig::DecliningEpsilonTs {
            schedule: EpsilonSchedule::default(),
        },
        PolicyConfig::TopTwoTs { beta: 0.7 },
        PolicyConfig::TsPostDiff { c: 0.1 },
        PolicyConfig::TsProbClip { p_max: 0.6 },
    ]
}
