//! Parameter grids of the built-in result tables.

use tsmix_core::policy::EpsilonSchedule;
use tsmix_core::{ExperimentConfig, PolicyConfig};

use crate::args::TableId;

/// Null and alternative settings shared by most tables: (w, n).
const STANDARD_SETTINGS: [(f64, u64); 4] = [(0.0, 785), (0.0, 197), (0.1, 785), (0.2, 197)];

pub fn grid(table: TableId) -> Vec<ExperimentConfig> {
    match table {
        TableId::FixedDec => cross(&fixed_dec_policies(), &STANDARD_SETTINGS),
        TableId::ChoosingC => {
            let policies: Vec<_> = [0.0, 0.025, 0.05, 0.075, 0.1, 0.125, 0.15, 0.2, 1.0]
                .into_iter()
                .map(|c| PolicyConfig::TsPostDiff { c })
                .collect();
            cross(&policies, &[(0.0, 785), (0.1, 785)])
        }
        TableId::MoreCEps => {
            let mut policies = Vec::new();
            for (c, epsilon) in [0.05, 0.075, 0.1, 0.125, 0.2]
                .into_iter()
                .zip([0.025, 0.05, 0.1, 0.2, 0.6])
            {
                policies.push(PolicyConfig::TsPostDiff { c });
                policies.push(PolicyConfig::EpsilonTs { epsilon });
            }
            cross(&policies, &STANDARD_SETTINGS)
        }
        TableId::Probclip => {
            let policies = [
                PolicyConfig::TsPostDiff { c: 0.125 },
                PolicyConfig::TsProbClip { p_max: 0.9 },
                PolicyConfig::TsPostDiff { c: 0.2 },
                PolicyConfig::TsProbClip { p_max: 0.6 },
                PolicyConfig::EpsilonGreedy { epsilon: 0.1 },
                PolicyConfig::EpsilonGreedy { epsilon: 0.6 },
                PolicyConfig::TopTwoTs { beta: 0.95 },
                PolicyConfig::TopTwoTs { beta: 0.7 },
            ];
            cross(&policies, &STANDARD_SETTINGS)
        }
        TableId::Top2 => {
            let mut grid = top2_block(
                197,
                &[0.0, 0.2, 0.3, 0.5],
                &[0.7625, 0.85, 0.9125, 0.95],
                &[0.275, 0.225, 0.175, 0.125],
            );
            grid.extend(top2_block(
                785,
                &[0.0, 0.1, 0.2, 0.3],
                &[0.8375, 0.8875, 0.9375, 0.975],
                &[0.15, 0.125, 0.1, 0.075],
            ));
            grid
        }
    }
}

fn fixed_dec_policies() -> Vec<PolicyConfig> {
    let schedule = EpsilonSchedule::default();
    vec![
        PolicyConfig::UniformRandom,
        PolicyConfig::ThompsonSampling,
        PolicyConfig::EpsilonTs { epsilon: 0.1 },
        PolicyConfig::EpsilonTs { epsilon: 0.6 },
        PolicyConfig::DecliningEpsilonTs { schedule },
        PolicyConfig::DecliningEpsilonGreedy { schedule },
        PolicyConfig::EpsilonGreedy { epsilon: 0.1 },
        PolicyConfig::EpsilonGreedy { epsilon: 0.6 },
        PolicyConfig::Greedy,
        PolicyConfig::TsPostDiff { c: 0.1 },
        PolicyConfig::TsPostDiff { c: 0.2 },
    ]
}

fn top2_block(n: u64, effects: &[f64], betas: &[f64], cs: &[f64]) -> Vec<ExperimentConfig> {
    let mut policies = vec![PolicyConfig::UniformRandom, PolicyConfig::ThompsonSampling];
    policies.extend(betas.iter().map(|&beta| PolicyConfig::TopTwoTs { beta }));
    policies.extend(cs.iter().map(|&c| PolicyConfig::TsPostDiff { c }));
    let settings: Vec<_> = effects.iter().map(|&w| (w, n)).collect();
    cross(&policies, &settings)
}

/// Row-major: every setting of the first policy, then the next policy.
fn cross(policies: &[PolicyConfig], settings: &[(f64, u64)]) -> Vec<ExperimentConfig> {
    policies
        .iter()
        .flat_map(|p| {
            settings
                .iter()
                .map(move |&(w, n)| ExperimentConfig::new(p.clone(), w, n))
        })
        .collect()
}
