//! Single-pass moment statistics and Gaussian helpers.

use std::f64::consts::{SQRT_2, TAU};

/// Running mean and variance over a stream of values (Welford's update).
/// Variance is the population variance (denominator `count`), which is
/// well defined from the first sample on.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunningMoments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningMoments {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn update(&mut self, value: f64) {
        self.count += 1;
        let delta = value - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (value - self.mean);
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            self.m2 / self.count as f64
        }
    }

    pub fn std(&self) -> f64 {
        self.variance().sqrt()
    }
}

/// ln N(x; mean, variance) for variance > 0.
pub(crate) fn gaussian_log_pdf(x: f64, mean: f64, variance: f64) -> f64 {
    debug_assert!(variance > 0.0);
    let d = x - mean;
    -0.5 * (TAU * variance).ln() - d * d / (2.0 * variance)
}

/// P(X <= x) for X ~ N(mean, std^2), std > 0. Uses erfc for accuracy in
/// the tails.
pub(crate) fn gaussian_cdf(x: f64, mean: f64, std: f64) -> f64 {
    debug_assert!(std > 0.0);
    0.5 * libm::erfc(-(x - mean) / (std * SQRT_2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_match_two_pass_computation() {
        let values = [3.5, -1.25, 0.0, 7.75, 2.5, 2.5, -10.0];
        let mut m = RunningMoments::new();
        for v in values {
            m.update(v);
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        assert!((m.mean() - mean).abs() < 1e-12);
        assert!((m.variance() - var).abs() < 1e-12);
        assert_eq!(m.count(), values.len() as u64);
    }

    #[test]
    fn constant_sequence_has_zero_variance() {
        let mut m = RunningMoments::new();
        for _ in 0..1000 {
            m.update(4.2);
        }
        assert!(m.variance().abs() < 1e-12);
        assert_eq!(m.mean(), 4.2);
    }

    #[test]
    fn empty_moments_are_zero() {
        let m = RunningMoments::new();
        assert_eq!(m.count(), 0);
        assert_eq!(m.variance(), 0.0);
    }

    #[test]
    fn cdf_basics() {
        assert!((gaussian_cdf(0.0, 0.0, 1.0) - 0.5).abs() < 1e-15);
        assert!(gaussian_cdf(10.0, 0.0, 1.0) > 1.0 - 1e-12);
        assert!(gaussian_cdf(-10.0, 0.0, 1.0) < 1e-12);
        // symmetry
        let lo = gaussian_cdf(-1.3, 0.0, 1.0);
        let hi = gaussian_cdf(1.3, 0.0, 1.0);
        assert!((lo + hi - 1.0).abs() < 1e-14);
    }

    #[test]
    fn log_pdf_matches_direct_formula() {
        let x = 1.7;
        let mean = 0.4;
        let var = 2.3;
        let direct = (1.0 / (TAU * var).sqrt()) * (-(x - mean) * (x - mean) / (2.0 * var)).exp();
        assert!((gaussian_log_pdf(x, mean, var) - direct.ln()).abs() < 1e-12);
    }
}
