use crate::error::{Error, Result};
use crate::model::Arm;
use crate::rng::RngStream;

use super::win_prob::prob_first_arm_beats_second_or_estimate;
use super::{ArmChoice, Branch, PolicyState};

/// Draws used by probability clipping when the posteriors are not integral.
const CLIP_FALLBACK_SAMPLES: u64 = 10_000;

/// Exploiting rule mixed with uniform allocation by [`select_epsilon_mix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixBase {
    Ts,
    Greedy,
}

#[inline]
fn argmax(values: [f64; 2], rng: &mut RngStream) -> Arm {
    if values[0] > values[1] {
        Arm::First
    } else if values[1] > values[0] {
        Arm::Second
    } else if rng.coin() {
        Arm::First
    } else {
        Arm::Second
    }
}

/// Fair coin between the arms, ignoring the state.
#[inline]
pub fn select_uniform(_state: &PolicyState, rng: &mut RngStream) -> ArmChoice {
    let arm = if rng.coin() { Arm::First } else { Arm::Second };
    ArmChoice::new(arm, Branch::Ur)
}

/// Thompson sampling: one posterior draw per arm, play the larger.
#[inline]
pub fn select_ts(state: &PolicyState, rng: &mut RngStream) -> ArmChoice {
    let draws = state.sample_pair(rng);
    ArmChoice::new(argmax(draws, rng), Branch::Ts)
}

/// Plays the arm with the larger posterior mean; exact ties are a coin flip.
pub fn select_greedy(state: &PolicyState, rng: &mut RngStream) -> ArmChoice {
    let means = state.posteriors().map(|p| p.mean());
    ArmChoice::new(argmax(means, rng), Branch::Exploit)
}

/// Uniform allocation with probability `epsilon_t`, the base rule otherwise.
///
/// The boundary values 0 and 1 skip the mixing coin, so `epsilon_t = 0`
/// consumes exactly the draws of the base rule.
pub fn select_epsilon_mix(
    base: MixBase,
    epsilon_t: f64,
    state: &PolicyState,
    rng: &mut RngStream,
) -> Result<ArmChoice> {
    if !(0.0..=1.0).contains(&epsilon_t) {
        return Err(Error::invalid(
            "epsilon",
            format!("must lie in [0, 1], got {epsilon_t}"),
        ));
    }
    let explore = match epsilon_t {
        e if e >= 1.0 => true,
        e if e <= 0.0 => false,
        e => rng.bernoulli(e),
    };
    Ok(if explore {
        select_uniform(state, rng)
    } else {
        match base {
            MixBase::Ts => select_ts(state, rng),
            MixBase::Greedy => select_greedy(state, rng),
        }
    })
}

/// Top-two Thompson sampling: the best sampled arm with probability
/// `beta_top2`, the runner-up otherwise.
pub fn select_top2_ts(state: &PolicyState, beta_top2: f64, rng: &mut RngStream) -> ArmChoice {
    debug_assert!((0.0..=1.0).contains(&beta_top2));
    let best = argmax(state.sample_pair(rng), rng);
    if beta_top2 >= 1.0 || rng.bernoulli(beta_top2) {
        ArmChoice::new(best, Branch::Ts)
    } else {
        ArmChoice::new(best.other(), Branch::SecondBest)
    }
}

/// TS PostDiff.
///
/// One posterior pair decides between uniform allocation (`|p₁ − p₂| < c`)
/// and Thompson sampling; the TS branch draws a fresh pair for the argmax.
/// At `c = 0` the first pair can never trigger the uniform branch and at
/// `c = 1` it always does, so those boundaries skip it.
pub fn select_ts_postdiff(state: &PolicyState, c: f64, rng: &mut RngStream) -> ArmChoice {
    debug_assert!((0.0..=1.0).contains(&c));
    if c <= 0.0 {
        return select_ts(state, rng);
    }
    if c >= 1.0 {
        return select_uniform(state, rng);
    }
    let [p1, p2] = state.sample_pair(rng);
    if (p1 - p2).abs() < c {
        select_uniform(state, rng)
    } else {
        select_ts(state, rng)
    }
}

/// Thompson sampling with the arm-1 assignment probability clipped to
/// `[1 − p_max, p_max]`.
///
/// The TS assignment probability `P(θ₁ > θ₂)` is computed exactly, then one
/// uniform variate realizes the (possibly clipped) probability.
pub fn select_ts_probclip(state: &PolicyState, p_max: f64, rng: &mut RngStream) -> ArmChoice {
    debug_assert!((0.5..=1.0).contains(&p_max));
    let [first, second] = state.posteriors();
    let pi =
        prob_first_arm_beats_second_or_estimate(first, second, CLIP_FALLBACK_SAMPLES, rng).value;
    let clipped = pi.clamp(1.0 - p_max, p_max);
    let branch = if clipped != pi {
        Branch::Clipped
    } else {
        Branch::Ts
    };
    let arm = if rng.bernoulli(clipped) {
        Arm::First
    } else {
        Arm::Second
    };
    ArmChoice::new(arm, branch)
}

/// Monte-Carlo estimate of `P(|p₁ − p₂| < c)` under the current posteriors.
pub fn estimate_phi(state: &PolicyState, c: f64, m: u64, rng: &mut RngStream) -> Result<f64> {
    if m == 0 {
        return Err(Error::invalid(
            "m",
            "at least one posterior pair is required",
        ));
    }
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::invalid("c", format!("must lie in [0, 1], got {c}")));
    }
    let close = (0..m)
        .filter(|_| {
            let [p1, p2] = state.sample_pair(rng);
            (p1 - p2).abs() < c
        })
        .count();
    Ok(close as f64 / m as f64)
}
