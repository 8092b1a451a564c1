//! Telegraph-noise path sampling.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::params::RtsParams;

/// One realization of the telegraph noise on [0, t_max]:
/// x(t) = amplitude · initial_sign · (−1)^{#flips ≤ t}.
#[derive(Debug, Clone, PartialEq)]
pub struct RtsPath {
    pub initial_sign: i8,
    /// Strictly increasing flip times, all < t_max.
    pub flip_times: Vec<f64>,
    pub t_max: f64,
    pub amplitude: f64,
    pub switch_rate: f64,
}

impl RtsPath {
    /// Noise value at time t ∈ [0, t_max].
    pub fn value_at(&self, t: f64) -> f64 {
        let flips = self.flip_times.partition_point(|&f| f <= t);
        let sign = if flips % 2 == 0 { 1.0 } else { -1.0 };
        self.amplitude * f64::from(self.initial_sign) * sign
    }

    /// A constant zero path (a = 0, no flips), for deterministic reference runs.
    pub fn zero(t_max: f64) -> Self {
        Self {
            initial_sign: 1,
            flip_times: Vec::new(),
            t_max,
            amplitude: 0.0,
            switch_rate: 0.0,
        }
    }
}

/// Sample a path: sign equiprobable ±1 (the stationary distribution), flip
/// times a Poisson process of rate `rts.switch_rate`.
///
/// Deterministic for a given seed; the draw order is fixed (sign first, then
/// exponential gaps), so identical seeds reproduce identical paths.
pub fn sample_rts_path(rts: &RtsParams, t_max: f64, seed: u64) -> RtsPath {
    assert!(t_max > 0.0, "t_max must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_rts_path_with(rts, t_max, &mut rng)
}

/// Same as [`sample_rts_path`] drawing from a caller-owned generator.
pub fn sample_rts_path_with(rts: &RtsParams, t_max: f64, rng: &mut impl Rng) -> RtsPath {
    let initial_sign: i8 = if rng.gen::<bool>() { 1 } else { -1 };
    let mut flip_times = Vec::new();
    if rts.switch_rate > 0.0 {
        let mut t = 0.0;
        loop {
            let u: f64 = rng.gen(); // in [0, 1)
            t += -(1.0 - u).ln() / rts.switch_rate;
            if t >= t_max {
                break;
            }
            flip_times.push(t);
        }
    }
    RtsPath {
        initial_sign,
        flip_times,
        t_max,
        amplitude: rts.amplitude,
        switch_rate: rts.switch_rate,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::rts_autocorrelation;

    #[test]
    fn zero_rate_gives_constant_path() {
        let rts = RtsParams::raw(0.5, 0.0, 1.0);
        let p = sample_rts_path(&rts, 10.0, 7);
        assert!(p.flip_times.is_empty());
        assert_eq!(p.value_at(0.0), p.value_at(9.9));
        assert_eq!(p.value_at(3.0).abs(), 0.5);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let rts = RtsParams::raw(1.0, 2.0, 1.0);
        let a = sample_rts_path(&rts, 50.0, 42);
        let b = sample_rts_path(&rts, 50.0, 42);
        assert_eq!(a, b);
        let c = sample_rts_path(&rts, 50.0, 43);
        assert_ne!(a, c);
    }

    #[test]
    fn value_follows_flip_parity() {
        let p = RtsPath {
            initial_sign: -1,
            flip_times: vec![1.0, 2.5, 4.0],
            t_max: 5.0,
            amplitude: 2.0,
            switch_rate: 1.0,
        };
        assert_eq!(p.value_at(0.5), -2.0);
        assert_eq!(p.value_at(1.5), 2.0);
        assert_eq!(p.value_at(3.0), -2.0);
        assert_eq!(p.value_at(4.5), 2.0);
    }

    #[test]
    fn mean_flip_count_matches_poisson() {
        // mean count over many seeds within 3σ of rate·T
        let rate = 1.7;
        let t_max = 20.0;
        let n = 20_000;
        let rts = RtsParams::raw(1.0, rate, 1.0);
        let total: usize = (0..n)
            .map(|s| sample_rts_path(&rts, t_max, s as u64).flip_times.len())
            .sum();
        let mean = total as f64 / n as f64;
        let expected = rate * t_max;
        let sigma = (expected / n as f64).sqrt();
        assert!(
            (mean - expected).abs() < 3.0 * sigma,
            "mean {mean} vs {expected} (3σ = {})",
            3.0 * sigma
        );
    }

    #[test]
    fn empirical_autocorrelation_is_dichotomous() {
        // E[x(t)x(t+τ)] = a²·e^{−2λτ}; estimated over an ensemble of paths
        let a = 1.3;
        let rate = 0.8;
        let t_max = 12.0;
        let n = 20_000usize;
        let rts = RtsParams::raw(a, rate, 1.0);
        let t0 = 2.0;
        let taus = [0.0, 0.4, 1.0, 2.0];
        let mut acc = [0.0f64; 4];
        let mut mean0 = 0.0f64;
        for s in 0..n {
            let p = sample_rts_path(&rts, t_max, 90_000 + s as u64);
            let x0 = p.value_at(t0);
            mean0 += x0;
            for (k, &tau) in taus.iter().enumerate() {
                acc[k] += x0 * p.value_at(t0 + tau);
            }
        }
        mean0 /= n as f64;
        assert!(mean0.abs() < 3.0 * a / (n as f64).sqrt(), "path mean {mean0}");
        for (k, &tau) in taus.iter().enumerate() {
            let emp = acc[k] / n as f64;
            let expect = rts_autocorrelation(a, rate, tau);
            // variance of x0·xτ is ≤ a⁴
            let sigma = a * a / (n as f64).sqrt();
            assert!(
                (emp - expect).abs() < 3.5 * sigma,
                "tau {tau}: {emp} vs {expect}"
            );
        }
    }
}
