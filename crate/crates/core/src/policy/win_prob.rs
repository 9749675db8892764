//! Probability that one Beta-distributed success rate exceeds another.

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::model::ArmPosterior;
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WinProbMethod {
    Exact,
    MonteCarlo { samples: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WinProbability {
    pub value: f64,
    pub method: WinProbMethod,
}

/// Exact `P(θ₁ > θ₂)` for independent `θ₁ ~ first`, `θ₂ ~ second`.
///
/// Uses the finite sum over an integer shape parameter. Of the four
/// equivalent sums (direct, complement, and their reflections `θ ↦ 1 − θ`)
/// the one with the fewest terms among those with an integral index is used.
/// The result for `(b, a)` is computed as `1 - P(a, b)`, so the two always
/// add up to exactly one.
pub fn prob_first_arm_beats_second(first: &ArmPosterior, second: &ArmPosterior) -> Result<f64> {
    let key = |p: &ArmPosterior| (p.alpha.to_bits(), p.beta.to_bits());
    match key(first).cmp(&key(second)) {
        std::cmp::Ordering::Equal => Ok(0.5),
        std::cmp::Ordering::Less => canonical(first, second),
        std::cmp::Ordering::Greater => canonical(second, first).map(|q| 1.0 - q),
    }
}

/// Exact when the parameters allow it, otherwise a Monte-Carlo estimate.
pub fn prob_first_arm_beats_second_or_estimate(
    first: &ArmPosterior,
    second: &ArmPosterior,
    samples: u64,
    rng: &mut RngStream,
) -> WinProbability {
    match prob_first_arm_beats_second(first, second) {
        Ok(value) => WinProbability {
            value,
            method: WinProbMethod::Exact,
        },
        Err(_) => {
            let samples = samples.max(1);
            let wins = (0..samples)
                .filter(|_| first.sample(rng) > second.sample(rng))
                .count();
            WinProbability {
                value: wins as f64 / samples as f64,
                method: WinProbMethod::MonteCarlo { samples },
            }
        }
    }
}

fn canonical(x: &ArmPosterior, y: &ArmPosterior) -> Result<f64> {
    let reflect = |p: &ArmPosterior| ArmPosterior {
        alpha: p.beta,
        beta: p.alpha,
    };
    // (terms, index posterior, other posterior, complement?)
    let routes = [
        (x.alpha, *x, *y, false),
        (y.alpha, *y, *x, true),
        (y.beta, reflect(y), reflect(x), false),
        (x.beta, reflect(x), reflect(y), true),
    ];
    let (_, winner, loser, complement) = routes
        .into_iter()
        .filter(|r| r.0.fract() == 0.0)
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .ok_or_else(|| {
            Error::Domain(format!(
                "exact win probability needs an integral shape parameter, got Beta({}, {}) vs Beta({}, {})",
                x.alpha, x.beta, y.alpha, y.beta
            ))
        })?;
    let p = integer_sum(&winner, &loser);
    Ok(if complement { 1.0 - p } else { p }.clamp(0.0, 1.0))
}

fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

/// `P(B > A)` for `B ~ winner` with integral `winner.alpha`:
/// `Σ_{i<αB} B(αA+i, βA+βB) / ((βB+i) B(1+i, βB) B(αA, βA))`.
///
/// Consecutive terms differ by `(αA+i)/(αA+i+βA+βB) · (βB+i)/(i+1)`, so only
/// the first term needs log-gamma evaluations.
fn integer_sum(winner: &ArmPosterior, loser: &ArmPosterior) -> f64 {
    const RESCALE: f64 = 1e250;
    let (a_a, b_a) = (loser.alpha, loser.beta);
    let b_b = winner.beta;
    let s = b_a + b_b;
    let terms = winner.alpha as u64;

    let mut log_scale = ln_beta(a_a, s) - ln_beta(a_a, b_a);
    let mut term = 1.0;
    let mut sum = 0.0;
    for i in 0..terms {
        let i = i as f64;
        sum += term;
        term *= (a_a + i) * (b_b + i) / ((a_a + i + s) * (i + 1.0));
        if term > RESCALE {
            term /= RESCALE;
            sum /= RESCALE;
            log_scale += RESCALE.ln();
        }
    }
    if sum == 0.0 {
        return 0.0;
    }
    (log_scale + sum.ln()).exp()
}
