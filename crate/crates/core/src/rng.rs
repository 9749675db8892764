//! Deterministic random streams.
//!
//! Every simulation owns one [`RngStream`] keyed by `(base_seed, stream_index)`.
//! The stream is a ChaCha8 generator seeded from `base_seed` with its 64-bit
//! stream counter set to `stream_index`, so streams can be created in any
//! order, on any thread, and always produce the same sequence.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution};

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct RngStream {
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(base_seed: u64, stream_index: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(base_seed);
        inner.set_stream(stream_index);
        Self { inner }
    }

    /// Uniform variate in `[0, 1)`.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    /// `true` with probability `p`, consuming exactly one uniform variate.
    #[inline]
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }

    /// Fair coin, consuming exactly one uniform variate.
    #[inline]
    pub fn coin(&mut self) -> bool {
        self.uniform() < 0.5
    }

    /// One draw from `Beta(alpha, beta)`.
    pub fn beta(&mut self, alpha: f64, beta: f64) -> Result<f64> {
        sample_beta(alpha, beta, self)
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }
}

/// Draws from `Beta(alpha, beta)` using Cheng's exact rejection samplers.
pub fn sample_beta(alpha: f64, beta: f64, rng: &mut RngStream) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::invalid(
            "alpha",
            format!("must be positive, got {alpha}"),
        ));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::invalid(
            "beta",
            format!("must be positive, got {beta}"),
        ));
    }
    let dist = Beta::new(alpha, beta).map_err(|e| Error::invalid("beta", e.to_string()))?;
    Ok(dist.sample(&mut rng.inner))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn moments(alpha: f64, beta: f64, draws: usize) -> (f64, f64) {
        let mut rng = RngStream::new(11, 0);
        let xs: Vec<f64> = (0..draws)
            .map(|_| sample_beta(alpha, beta, &mut rng).unwrap())
            .collect();
        let mean = xs.iter().sum::<f64>() / draws as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (draws - 1) as f64;
        (mean, var)
    }

    #[test]
    fn same_key_same_sequence() {
        let mut a = RngStream::new(42, 7);
        let mut b = RngStream::new(42, 7);
        for _ in 0..1000 {
            assert_eq!(a.uniform().to_bits(), b.uniform().to_bits());
        }
    }

    #[test]
    fn distinct_streams_differ() {
        let mut a = RngStream::new(42, 0);
        let mut b = RngStream::new(42, 1);
        let same = (0..100).filter(|_| a.next_u64() == b.next_u64()).count();
        assert_eq!(same, 0);
    }

    #[test]
    fn distinct_streams_uncorrelated() {
        let mut a = RngStream::new(5, 100);
        let mut b = RngStream::new(5, 101);
        let n = 200_000;
        let (mut sab, mut sa, mut sb, mut saa, mut sbb) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for _ in 0..n {
            let (x, y) = (a.uniform(), b.uniform());
            sab += x * y;
            sa += x;
            sb += y;
            saa += x * x;
            sbb += y * y;
        }
        let n = n as f64;
        let cov = sab / n - (sa / n) * (sb / n);
        let corr = cov / ((saa / n - (sa / n).powi(2)) * (sbb / n - (sb / n).powi(2))).sqrt();
        // |corr| of independent streams is ~N(0, 1/n); 5 sigma.
        assert!(corr.abs() < 5.0 / n.sqrt(), "corr = {corr}");
    }

    #[test]
    fn uniform_beta_moments() {
        let (mean, var) = moments(1.0, 1.0, 1_000_000);
        assert!((mean - 0.5).abs() < 0.002, "{mean}");
        assert!((var - 1.0 / 12.0).abs() < 0.001, "{var}");
    }

    #[test]
    fn skewed_beta_mean() {
        let (mean, _) = moments(2.0, 1.0, 1_000_000);
        assert!((mean - 2.0 / 3.0).abs() < 0.002, "{mean}");
    }

    #[test]
    fn symmetric_beta_moments() {
        let (mean, var) = moments(5.0, 5.0, 1_000_000);
        assert!((mean - 0.5).abs() < 0.002, "{mean}");
        assert!((var - 25.0 / 1100.0).abs() < 0.001, "{var}");
    }

    #[test]
    fn rejects_non_positive_parameters() {
        let mut rng = RngStream::new(0, 0);
        assert!(matches!(
            sample_beta(0.0, 1.0, &mut rng),
            Err(Error::InvalidParameter { .. })
        ));
        assert!(sample_beta(1.0, -2.0, &mut rng).is_err());
        assert!(sample_beta(f64::NAN, 1.0, &mut rng).is_err());
    }
}
