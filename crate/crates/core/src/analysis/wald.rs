use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Arm;

use super::normal::normal_quantile;

/// Outcome of the two-proportion Wald test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub z: f64,
    pub reject: bool,
    pub estimated_superior_arm: Option<Arm>,
    /// Zero standard error or an empty arm; `z` follows the fixed conventions
    /// documented on [`wald_test`].
    pub degenerate: bool,
}

/// Unpooled two-sided Wald z-test of `H0: p1 = p2`.
///
/// `z = (p̂₁ − p̂₂) / sqrt(p̂₁(1−p̂₁)/n₁ + p̂₂(1−p̂₂)/n₂)`, rejecting when
/// `|z| > Φ⁻¹(1 − alpha_level/2)`.
///
/// Degenerate cases:
/// * an arm with no observations: `z = 0`, never reject;
/// * zero standard error with equal means: `z = 0`, do not reject;
/// * zero standard error with different means: `z = ±∞`, reject.
pub fn wald_test(n1: u64, s1: u64, n2: u64, s2: u64, alpha_level: f64) -> Result<TestResult> {
    if s1 > n1 {
        return Err(Error::invalid(
            "s1",
            format!("{s1} successes exceed {n1} observations"),
        ));
    }
    if s2 > n2 {
        return Err(Error::invalid(
            "s2",
            format!("{s2} successes exceed {n2} observations"),
        ));
    }
    if !(alpha_level > 0.0 && alpha_level < 1.0) {
        return Err(Error::invalid(
            "alpha_level",
            format!("must lie in (0, 1), got {alpha_level}"),
        ));
    }
    if n1 == 0 || n2 == 0 {
        return Ok(TestResult {
            z: 0.0,
            reject: false,
            estimated_superior_arm: None,
            degenerate: true,
        });
    }

    let (m1, m2) = (s1 as f64 / n1 as f64, s2 as f64 / n2 as f64);
    let estimated_superior_arm = if m1 > m2 {
        Some(Arm::First)
    } else if m2 > m1 {
        Some(Arm::Second)
    } else {
        None
    };
    let variance = m1 * (1.0 - m1) / n1 as f64 + m2 * (1.0 - m2) / n2 as f64;
    let diff = m1 - m2;
    if variance == 0.0 {
        let z = if diff == 0.0 {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        };
        return Ok(TestResult {
            z,
            reject: diff != 0.0,
            estimated_superior_arm,
            degenerate: true,
        });
    }
    let z = diff / variance.sqrt();
    let critical = normal_quantile(1.0 - alpha_level / 2.0)?;
    Ok(TestResult {
        z,
        reject: z.abs() > critical,
        estimated_superior_arm,
        degenerate: false,
    })
}
