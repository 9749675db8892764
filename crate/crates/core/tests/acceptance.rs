//! Acceptance suite: reproduces the reference Monte-Carlo results at
//! 10,000 simulations with the default seed and prints one line per
//! criterion. Exits non-zero if any criterion fails.

mod common;

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::Instant;

use tsmix_core::analysis::Estimate;
use tsmix_core::harness::{run_experiment_with_workers, Experiment};
use tsmix_core::policy::{select_epsilon_mix, select_top2_ts, MixBase};
use tsmix_core::*;

const SIMS: u64 = 10_000;
const N: u64 = 785;

struct Runner {
    cache: HashMap<String, Experiment>,
}

impl Runner {
    fn run(&mut self, config: ExperimentConfig) -> &Experiment {
        let key = serde_json::to_string(&config).unwrap();
        self.cache
            .entry(key)
            .or_insert_with(|| run_experiment(&config).expect("experiment runs"))
    }

    fn summary(&mut self, policy: PolicyConfig, w: f64) -> MetricsSummary {
        self.run(ExperimentConfig::new(policy, w, N).with_sims(SIMS))
            .summary
            .clone()
    }
}

#[derive(Default)]
struct Criterion {
    checks: Vec<(String, bool)>,
}

impl Criterion {
    fn near(&mut self, what: &str, got: f64, target: f64, tol: f64) {
        let ok = (got - target).abs() <= tol;
        self.checks
            .push((format!("{what}={got:.4} (target {target} ± {tol})"), ok));
    }

    fn holds(&mut self, what: impl Into<String>, ok: bool) {
        self.checks.push((what.into(), ok));
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

fn reference_row(
    r: &mut Runner,
    c: &mut Criterion,
    policy: PolicyConfig,
    fpr: Option<(f64, f64)>,
    power: (f64, f64),
    reward: (f64, f64),
) -> MetricsSummary {
    if let Some((target, tol)) = fpr {
        let null = r.summary(policy.clone(), 0.0);
        c.near("FPR", null.fpr().unwrap().value, target, tol);
    }
    let alt = r.summary(policy, 0.1);
    c.near("Power", alt.power().unwrap().value, power.0, power.1);
    c.near("Reward", alt.reward.value, reward.0, reward.1);
    alt
}

fn c1(r: &mut Runner, c: &mut Criterion) {
    let alt = reference_row(
        r,
        c,
        PolicyConfig::UniformRandom,
        Some((0.055, 0.010)),
        (0.806, 0.012),
        (0.500, 0.003),
    );
    c.near("PropOpt", alt.prop_opt.unwrap().value, 0.500, 0.003);
}

fn c2(r: &mut Runner, c: &mut Criterion) {
    let alt = reference_row(
        r,
        c,
        PolicyConfig::ThompsonSampling,
        Some((0.135, 0.012)),
        (0.564, 0.015),
        (0.536, 0.003),
    );
    c.near("PropOpt", alt.prop_opt.unwrap().value, 0.860, 0.010);
}

fn c3(r: &mut Runner, c: &mut Criterion) {
    reference_row(
        r,
        c,
        PolicyConfig::TsPostDiff { c: 0.1 },
        Some((0.078, 0.010)),
        (0.775, 0.013),
        (0.524, 0.003),
    );
}

fn c4(r: &mut Runner, c: &mut Criterion) {
    reference_row(
        r,
        c,
        PolicyConfig::TsPostDiff { c: 0.2 },
        Some((0.054, 0.008)),
        (0.800, 0.012),
        (0.506, 0.003),
    );
}

fn c5(r: &mut Runner, c: &mut Criterion) {
    reference_row(
        r,
        c,
        PolicyConfig::EpsilonTs { epsilon: 0.1 },
        Some((0.081, 0.010)),
        (0.602, 0.015),
        (0.533, 0.003),
    );
}

/// Both estimates agree within three combined standard errors.
fn agree(c: &mut Criterion, what: &str, a: Estimate, b: Estimate) {
    let tol = 3.0 * (a.se.powi(2) + b.se.powi(2)).sqrt();
    c.holds(
        format!(
            "{what}: top-two {:.4} vs eps-TS {:.4} (|diff| <= {tol:.4})",
            a.value, b.value
        ),
        (a.value - b.value).abs() <= tol,
    );
}

fn c6(r: &mut Runner, c: &mut Criterion) {
    let top2 = PolicyConfig::top_two_from_epsilon(0.6).unwrap();
    let alt = reference_row(r, c, top2.clone(), None, (0.779, 0.013), (0.516, 0.004));
    let eps = r.summary(PolicyConfig::EpsilonTs { epsilon: 0.6 }, 0.1);
    agree(c, "Power", alt.rejection_rate, eps.rejection_rate);
    agree(c, "Reward", alt.reward, eps.reward);
    agree(c, "PropOpt", alt.prop_opt.unwrap(), eps.prop_opt.unwrap());
    let null_top2 = r.summary(top2, 0.0);
    let null_eps = r.summary(PolicyConfig::EpsilonTs { epsilon: 0.6 }, 0.0);
    agree(c, "FPR", null_top2.rejection_rate, null_eps.rejection_rate);

    // Per-state selection rates on a grid of posteriors.
    let calls = 100_000;
    let grid = [
        ((1, 1), (1, 1)),
        ((2, 1), (1, 1)),
        ((30, 12), (18, 20)),
        ((100, 1), (1, 100)),
        ((4, 9), (9, 4)),
    ];
    let mut worst: f64 = 0.0;
    for (i, ((a, b), (x, y))) in grid.into_iter().enumerate() {
        let state = PolicyState::from_posteriors([
            ArmPosterior::new(a as f64, b as f64).unwrap(),
            ArmPosterior::new(x as f64, y as f64).unwrap(),
        ]);
        let mut rng_a = RngStream::new(99, 2 * i as u64);
        let mut rng_b = RngStream::new(99, 2 * i as u64 + 1);
        let top = (0..calls)
            .filter(|_| select_top2_ts(&state, 0.7, &mut rng_a).arm == Arm::First)
            .count() as f64
            / calls as f64;
        let mix = (0..calls)
            .filter(|_| {
                select_epsilon_mix(MixBase::Ts, 0.6, &state, &mut rng_b)
                    .unwrap()
                    .arm
                    == Arm::First
            })
            .count() as f64
            / calls as f64;
        worst = worst.max((top - mix).abs());
    }
    // Five sigma of the difference of two binomial rates at p = 1/2.
    let tol = 5.0 * (0.5 / calls as f64).sqrt();
    c.holds(
        format!("per-state max |rate diff|={worst:.4} <= {tol:.4}"),
        worst <= tol,
    );
}

fn c7(r: &mut Runner, c: &mut Criterion) {
    reference_row(
        r,
        c,
        PolicyConfig::TsProbClip { p_max: 0.6 },
        Some((0.051, 0.008)),
        (0.795, 0.012),
        (0.509, 0.003),
    );
}

fn c8(r: &mut Runner, c: &mut Criterion) {
    let null = r.summary(PolicyConfig::Greedy, 0.0);
    c.near("FPR", null.fpr().unwrap().value, 0.696, 0.015);
    let greedy = r.summary(PolicyConfig::Greedy, 0.1);
    let ts = r.summary(PolicyConfig::ThompsonSampling, 0.1);
    c.holds(
        format!(
            "Type-S greedy {:.3} well above TS {:.3} (> 0.1)",
            greedy.type_s.value, ts.type_s.value
        ),
        greedy.type_s.value > 0.1 && greedy.type_s.value > ts.type_s.value,
    );
}

fn c9(_: &mut Runner, c: &mut Criterion) {
    let n01 = required_sample_size(0.1, 0.05, 0.8).unwrap();
    let n02 = required_sample_size(0.2, 0.05, 0.8).unwrap();
    c.holds(format!("n(0.1)={n01} == 785"), n01 == 785);
    c.holds(format!("n(0.2)={n02} == 197"), n02 == 197);
}

fn c10(r: &mut Runner, c: &mut Criterion) {
    let cs = [0.0, 0.025, 0.05, 0.075, 0.1, 0.125, 0.15, 0.2, 1.0];
    let rows: Vec<MetricsSummary> = cs
        .iter()
        .map(|&cv| r.summary(PolicyConfig::TsPostDiff { c: cv }, 0.1))
        .collect();
    for (k, pair) in rows.windows(2).enumerate() {
        let (a, b) = (&pair[0], &pair[1]);
        let p_tol = 2.0 * (a.rejection_rate.se.powi(2) + b.rejection_rate.se.powi(2)).sqrt();
        c.holds(
            format!(
                "Power c={}→{}: {:.3}→{:.3}",
                cs[k],
                cs[k + 1],
                a.rejection_rate.value,
                b.rejection_rate.value
            ),
            b.rejection_rate.value >= a.rejection_rate.value - p_tol,
        );
        let r_tol = 2.0 * (a.reward.se.powi(2) + b.reward.se.powi(2)).sqrt();
        c.holds(
            format!(
                "Reward c={}→{}: {:.4}→{:.4}",
                cs[k],
                cs[k + 1],
                a.reward.value,
                b.reward.value
            ),
            b.reward.value <= a.reward.value + r_tol,
        );
    }
    let power = |cv: f64| {
        rows[cs.iter().position(|&x| x == cv).unwrap()]
            .rejection_rate
            .value
    };
    let late = power(0.2) - power(0.125);
    let early = power(0.1) - power(0.025);
    c.holds(
        format!("diminishing returns: P(.2)-P(.125)={late:.3} < P(.1)-P(.025)={early:.3}"),
        late < early,
    );
}

fn c11(_: &mut Runner, c: &mut Criterion) {
    let checkpoints: Vec<u64> = (1..=N)
        .filter(|t| t % 25 == 0 || *t == 1 || *t == N)
        .collect();
    for (w, cv, above) in [(0.0, 0.1, true), (0.1, 0.05, false)] {
        let config = ExperimentConfig::new(PolicyConfig::TsPostDiff { c: cv }, w, N)
            .with_sims(SIMS)
            .with_phi(checkpoints.clone(), 100);
        let curve = phi_curve(&config).unwrap();
        let last = curve.last().unwrap().mean_phi;
        if above {
            c.holds(format!("w=0 c=0.1 final phi={last:.3} > 0.8"), last > 0.8);
        } else {
            c.holds(
                format!("w=0.1 c=0.05 final phi={last:.3} < 0.2"),
                last < 0.2,
            );
        }
    }
}

fn c12(r: &mut Runner, c: &mut Criterion) {
    // Conjugacy counting on full trajectories.
    let cfg = ExperimentConfig::new(PolicyConfig::TsPostDiff { c: 0.1 }, 0.1, N).with_sims(200);
    let exp = r.run(cfg);
    let counting = exp.results.iter().all(|s| {
        s.n() == N
            && s.successes[0] <= s.pulls[0]
            && s.successes[1] <= s.pulls[1]
            && s.total_reward == s.successes[0] + s.successes[1]
    });
    c.holds("pulls sum to n, successes <= pulls", counting);
    let mut state = PolicyState::new();
    let mut rng = RngStream::new(12, 0);
    let env = Environment::from_effect_size(0.2).unwrap();
    let mut ok = true;
    for t in 1..=500u64 {
        let arm = PolicyConfig::ThompsonSampling.select(&state, &mut rng).arm;
        state.observe(arm, env.draw_reward(arm, &mut rng));
        let total: f64 = state
            .posteriors()
            .iter()
            .map(|p| p.alpha + p.beta - 2.0)
            .sum();
        ok &= total == t as f64;
    }
    c.holds("sum of alpha+beta-2 equals participants", ok);

    // Exact win probability.
    let mut complement = true;
    for a in 1..25u32 {
        for b in (1..25u32).step_by(3) {
            for (x, y) in [(3, 7), (12, 12), (20, 5)] {
                let p = ArmPosterior::new(a as f64, b as f64).unwrap();
                let q = ArmPosterior::new(x as f64, y as f64).unwrap();
                let s = prob_first_arm_beats_second(&p, &q).unwrap()
                    + prob_first_arm_beats_second(&q, &p).unwrap();
                complement &= s == 1.0;
            }
        }
    }
    c.holds("P(a>b) + P(b>a) == 1 exactly", complement);
    let mut worst: f64 = 0.0;
    for (a, b, x, y) in [
        (3, 2, 2, 3),
        (2, 1, 1, 1),
        (10, 4, 7, 9),
        (1, 5, 3, 1),
        (15, 15, 14, 16),
    ] {
        let exact = prob_first_arm_beats_second(
            &ArmPosterior::new(a as f64, b as f64).unwrap(),
            &ArmPosterior::new(x as f64, y as f64).unwrap(),
        )
        .unwrap();
        worst = worst.max((exact - common::win_prob_quadrature(a, b, x, y)).abs());
    }
    c.holds(
        format!("quadrature agreement max err {worst:.2e} <= 1e-6"),
        worst <= 1e-6,
    );

    let cdf = normal_cdf(1.959964);
    c.holds(
        format!("normal_cdf(1.959964)={cdf:.9}"),
        (cdf - 0.975).abs() <= 1e-6,
    );

    // Same-seed equivalences of the PostDiff boundaries.
    let small = |p: PolicyConfig| {
        ExperimentConfig::new(p, 0.1, 300)
            .with_sims(300)
            .with_seed(5)
    };
    let pd0 = run_experiment(&small(PolicyConfig::TsPostDiff { c: 0.0 })).unwrap();
    let ts = run_experiment(&small(PolicyConfig::ThompsonSampling)).unwrap();
    let same_counts = |a: &Experiment, b: &Experiment| {
        a.results
            .iter()
            .zip(&b.results)
            .all(|(x, y)| x.pulls == y.pulls && x.successes == y.successes && x.test == y.test)
    };
    c.holds(
        "PostDiff c=0 == TS (same seed)",
        same_counts(&pd0, &ts) && pd0.summary == ts.summary,
    );
    let pd1 = run_experiment(&small(PolicyConfig::TsPostDiff { c: 1.0 })).unwrap();
    let ur = run_experiment(&small(PolicyConfig::UniformRandom)).unwrap();
    c.holds(
        "PostDiff c=1 == UR (same seed)",
        same_counts(&pd1, &ur) && pd1.summary == ur.summary,
    );

    let cfg = small(PolicyConfig::TsProbClip { p_max: 0.8 });
    let serial = run_experiment_with_workers(&cfg, 1).unwrap();
    let parallel = run_experiment_with_workers(&cfg, 4).unwrap();
    c.holds("1 worker == 4 workers", serial == parallel);
}

fn main() -> ExitCode {
    type Check = fn(&mut Runner, &mut Criterion);
    let criteria: [(&str, Check); 12] = [
        ("1  UR baseline", c1),
        ("2  Thompson sampling", c2),
        ("3  TS PostDiff c=0.1", c3),
        ("4  TS PostDiff c=0.2", c4),
        ("5  eps-TS eps=0.1", c5),
        ("6  Top-two TS beta=0.7 / eps-TS 0.6", c6),
        ("7  TS ProbClip p_max=0.6", c7),
        ("8  Greedy pathology", c8),
        ("9  Sample-size calculator", c9),
        ("10 c-sweep monotonicity", c10),
        ("11 phi convergence", c11),
        ("12 Property suite", c12),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .map(|a| a.to_lowercase())
        .collect();
    let mut runner = Runner {
        cache: HashMap::new(),
    };
    let mut failed = 0;
    for (name, check) in criteria {
        if !filter.is_empty()
            && !filter
                .iter()
                .any(|f| name.to_lowercase().contains(f.as_str()))
        {
            continue;
        }
        let start = Instant::now();
        let mut criterion = Criterion::default();
        check(&mut runner, &mut criterion);
        let verdict = if criterion.passed() { "PASS" } else { "FAIL" };
        println!(
            "[{verdict}] criterion {name} ({:.1}s)",
            start.elapsed().as_secs_f64()
        );
        for (detail, ok) in &criterion.checks {
            println!("         {} {detail}", if *ok { "ok  " } else { "FAIL" });
        }
        if !criterion.passed() {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    } else {
        println!("all acceptance criteria passed");
        ExitCode::SUCCESS
    }
}
