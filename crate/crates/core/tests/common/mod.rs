//! Independent numerical oracles shared by the integration tests.
#![allow(dead_code)]

/// `ln B(a, b)` for positive integers via factorials.
fn ln_beta_int(a: u32, b: u32) -> f64 {
    let ln_fact = |k: u32| (1..=k).map(|i| (i as f64).ln()).sum::<f64>();
    ln_fact(a - 1) + ln_fact(b - 1) - ln_fact(a + b - 1)
}

fn beta_pdf(x: f64, a: u32, b: u32) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return if (x <= 0.0 && a == 1) || (x >= 1.0 && b == 1) {
            (-ln_beta_int(a, b)).exp()
        } else {
            0.0
        };
    }
    ((a - 1) as f64 * x.ln() + (b - 1) as f64 * (1.0 - x).ln() - ln_beta_int(a, b)).exp()
}

fn simpson(f: impl Fn(f64) -> f64, lo: f64, hi: f64, intervals: usize) -> f64 {
    let intervals = intervals + intervals % 2;
    let h = (hi - lo) / intervals as f64;
    let mut acc = f(lo) + f(hi);
    for i in 1..intervals {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(lo + i as f64 * h);
    }
    acc * h / 3.0
}

/// `P(X > Y)` for `X ~ Beta(a, b)`, `Y ~ Beta(c, d)` by nested Simpson
/// quadrature over the triangle `y < x`.
pub fn win_prob_quadrature(a: u32, b: u32, c: u32, d: u32) -> f64 {
    simpson(
        |x| beta_pdf(x, a, b) * simpson(|y| beta_pdf(y, c, d), 0.0, x, 400),
        0.0,
        1.0,
        800,
    )
}

/// Two-sample Kolmogorov–Smirnov statistic.
pub fn ks_statistic(mut xs: Vec<f64>, mut ys: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let (n, m) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < xs.len() && j < ys.len() {
        if xs[i] <= ys[j] {
            i += 1;
        } else {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    d
}

/// KS critical value `c(α) sqrt((n + m) / (n m))`.
pub fn ks_critical(n: usize, m: usize, significance: f64) -> f64 {
    let c = (-0.5 * (significance / 2.0).ln()).sqrt();
    c * ((n + m) as f64 / (n as f64 * m as f64)).sqrt()
}
