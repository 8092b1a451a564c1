//! Two-time correlations over noise trajectories and the Monte Carlo
//! spectrum.
//!
//! Reproducibility contract: trajectory i draws its path from a ChaCha
//! generator seeded with `seed XOR i`; trajectories are accumulated in fixed
//! chunks (at most [`OracleSettings::chunk_count`]) that are combined in
//! chunk order, so results are bit-identical for any thread count.
//!
//! Noise convention: the closed-form spectrum's switching rate 1/τ_a is the
//! relaxation rate of the noise-odd component of the averaged propagator,
//! which for a telegraph flipping at Poisson rate λ equals 2λ. The Monte
//! Carlo engine therefore samples flips at `switch_rate / 2`, simulating
//! exactly the process the formula with that switch_rate describes.

use nalgebra::Vector4;
use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::curve::{validate_grid, Provenance, SpectrumCurve};
use crate::params::{PhysicalParams, RtsParams};

use super::bloch::{OracleError, PathWalker, SegmentStepper};
use super::rts::{sample_rts_path_with, RtsPath};

/// Tunables of the Monte Carlo engine. `None` fields fall back to the
/// γ-scaled defaults.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSettings {
    /// Pre-τ equilibration time; default 20/γ.
    pub burn_in: Option<f64>,
    /// Correlation horizon for the spectrum; default 30/γ.
    pub tau_max: Option<f64>,
    /// Correlation sampling step; default resolves the fastest oscillation.
    pub tau_step: Option<f64>,
    /// Number of accumulation chunks (fixed, thread-count independent).
    pub chunk_count: usize,
}

impl Default for OracleSettings {
    fn default() -> Self {
        Self { burn_in: None, tau_max: None, tau_step: None, chunk_count: 128 }
    }
}

impl OracleSettings {
    fn burn_in_for(&self, params: &PhysicalParams) -> f64 {
        self.burn_in.unwrap_or(20.0 / params.gamma)
    }

    fn tau_max_for(&self, params: &PhysicalParams) -> f64 {
        self.tau_max.unwrap_or(30.0 / params.gamma)
    }

    fn tau_step_for(&self, params: &PhysicalParams, rts: &RtsParams, omega_abs_max: f64) -> f64 {
        self.tau_step.unwrap_or_else(|| {
            let osc = (params.rabi_frequency.powi(2) + params.detuning.powi(2)).sqrt()
                + rts.amplitude;
            let wmax = omega_abs_max.max(params.gamma);
            (0.05 / params.gamma).min(0.04 / osc).min(0.25 / wmax)
        })
    }
}

/// Monte Carlo estimate of a two-time correlation on a τ grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationEstimate {
    pub tau_grid: Vec<f64>,
    pub values: Vec<Complex64>,
    /// Pointwise standard error of the mean, from across-trajectory variance.
    pub std_error: Vec<f64>,
    pub n_trajectories: usize,
    pub seed: u64,
}

const EQUILIBRATION_DRIFT_TOL: f64 = 1e-4;
const PLATEAU_DECAY_TOL: f64 = 1e-4;

/// Flip rate of the sampled paths for a given formula-side switch rate.
fn sampling_rts(rts: &RtsParams) -> RtsParams {
    RtsParams { switch_rate: 0.5 * rts.switch_rate, ..*rts }
}

fn chunk_ranges(n: usize, chunks: usize) -> Vec<std::ops::Range<usize>> {
    let c = chunks.clamp(1, n.max(1));
    let base = n / c;
    let extra = n % c;
    let mut out = Vec::with_capacity(c);
    let mut start = 0;
    for i in 0..c {
        let len = base + usize::from(i < extra);
        out.push(start..start + len);
        start += len;
    }
    out
}

/// Deterministic settling check on the zero-noise reference: the relative
/// drift of the excited population over the last 10% of the burn-in must be
/// below 1e-4. Run on the noise-free trajectory because a finite Monte Carlo
/// ensemble cannot resolve drifts that small.
fn check_equilibration(params: &PhysicalParams, burn_in: f64) -> Result<(), OracleError> {
    if !(burn_in > 0.0) {
        return Err(OracleError::BadInput { reason: format!("burn-in must be > 0, got {burn_in}") });
    }
    let stepper = SegmentStepper::new(params, 0.0, burn_in);
    let path = RtsPath::zero(burn_in);
    let mut walker = PathWalker::new(&path, &stepper);
    let mut v = Vector4::new(
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
    );
    walker.advance(&mut v, 0.9 * burn_in);
    let p_early = v[0].re;
    walker.advance(&mut v, burn_in);
    let p_end = v[0].re;
    let drift = (p_end - p_early).abs() / p_end.abs().max(f64::MIN_POSITIVE);
    if drift > EQUILIBRATION_DRIFT_TOL && (p_end - p_early).abs() > 1e-15 {
        return Err(OracleError::InsufficientEquilibration {
            drift,
            threshold: EQUILIBRATION_DRIFT_TOL,
        });
    }
    Ok(())
}

/// Welford accumulator per τ point; exact zero scatter for identical
/// trajectories and immune to cancellation.
struct ChunkStats {
    mean: Vec<Complex64>,
    m2: Vec<f64>,
    count: usize,
}

impl ChunkStats {
    fn new(n_tau: usize) -> Self {
        Self { mean: vec![Complex64::new(0.0, 0.0); n_tau], m2: vec![0.0; n_tau], count: 0 }
    }

    fn push(&mut self, k: usize, x: Complex64) {
        // count is incremented once per trajectory, before the τ loop
        let delta = x - self.mean[k];
        self.mean[k] += delta / self.count as f64;
        let delta2 = x - self.mean[k];
        self.m2[k] += delta.re * delta2.re + delta.im * delta2.im;
    }

    /// In-order pairwise merge (Chan's update); deterministic given the
    /// chunk order.
    fn merge(&mut self, other: &ChunkStats) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            self.mean.clone_from(&other.mean);
            self.m2.clone_from(&other.m2);
            self.count = other.count;
            return;
        }
        let na = self.count as f64;
        let nb = other.count as f64;
        let n = na + nb;
        for k in 0..self.mean.len() {
            let delta = other.mean[k] - self.mean[k];
            self.mean[k] += delta * (nb / n);
            self.m2[k] += other.m2[k] + delta.norm_sqr() * na * nb / n;
        }
        self.count += other.count;
    }
}

/// Steady-state dipole correlation ⟨σ⁺(t+τ)σ⁻(t)⟩ averaged over noise
/// trajectories, with default engine settings.
///
/// Each trajectory equilibrates the atom along one noise path, then the
/// regression vector σ⁻ρ is propagated over τ with the same continuing
/// realization. values[0] is the mean steady-state excited population,
/// exactly real by construction.
pub fn correlation_function(
    params: &PhysicalParams,
    rts: &RtsParams,
    tau_grid: &[f64],
    n_traj: usize,
    seed: u64,
) -> Result<CorrelationEstimate, OracleError> {
    correlation_function_with(params, rts, tau_grid, n_traj, seed, &OracleSettings::default())
}

pub fn correlation_function_with(
    params: &PhysicalParams,
    rts: &RtsParams,
    tau_grid: &[f64],
    n_traj: usize,
    seed: u64,
    settings: &OracleSettings,
) -> Result<CorrelationEstimate, OracleError> {
    if n_traj == 0 {
        return Err(OracleError::BadInput { reason: "need at least one trajectory".into() });
    }
    if tau_grid.is_empty() || tau_grid[0] != 0.0 {
        return Err(OracleError::BadInput { reason: "tau grid must start at 0".into() });
    }
    for i in 1..tau_grid.len() {
        if tau_grid[i] <= tau_grid[i - 1] {
            return Err(OracleError::BadInput {
                reason: format!("tau grid not strictly increasing at index {i}"),
            });
        }
    }
    let burn_in = settings.burn_in_for(params);
    check_equilibration(params, burn_in)?;

    let tau_max = *tau_grid.last().unwrap();
    let t_total = burn_in + tau_max;
    let sampler = sampling_rts(rts);
    let cache_dt = if tau_grid.len() >= 2 { tau_grid[1] - tau_grid[0] } else { tau_max.max(1.0) };
    let stepper = SegmentStepper::new(params, rts.amplitude, cache_dt);
    let n_tau = tau_grid.len();

    let ranges = chunk_ranges(n_traj, settings.chunk_count);
    let chunks: Vec<ChunkStats> = ranges
        .into_par_iter()
        .map(|range| {
            let mut stats = ChunkStats::new(n_tau);
            for traj in range {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ traj as u64);
                let path = sample_rts_path_with(&sampler, t_total, &mut rng);
                let mut walker = PathWalker::new(&path, &stepper);
                // equilibrate the atom from the ground state
                let mut rho = Vector4::new(
                    Complex64::new(0.0, 0.0),
                    Complex64::new(1.0, 0.0),
                    Complex64::new(0.0, 0.0),
                    Complex64::new(0.0, 0.0),
                );
                walker.advance(&mut rho, burn_in);
                // hermitize, then apply sigma-: (sigma- rho) has
                // (ee, gg, eg, ge) = (0, rho_eg, 0, rho_ee)
                let rho_ee = rho[0].re;
                let rho_eg = 0.5 * (rho[2] + rho[3].conj());
                let mut m = Vector4::new(
                    Complex64::new(0.0, 0.0),
                    rho_eg,
                    Complex64::new(0.0, 0.0),
                    Complex64::new(rho_ee, 0.0),
                );
                stats.count += 1;
                for (k, &tau) in tau_grid.iter().enumerate() {
                    if tau > 0.0 {
                        walker.advance(&mut m, burn_in + tau);
                    }
                    stats.push(k, m[3]);
                }
            }
            stats
        })
        .collect();

    let mut combined = ChunkStats::new(n_tau);
    for ch in &chunks {
        combined.merge(ch);
    }
    let n = n_traj as f64;
    let values = combined.mean;
    let std_error: Vec<f64> = combined
        .m2
        .iter()
        .map(|&m2| {
            if n_traj < 2 {
                0.0
            } else {
                (m2.max(0.0) / (n - 1.0) / n).sqrt()
            }
        })
        .collect();

    Ok(CorrelationEstimate {
        tau_grid: tau_grid.to_vec(),
        values,
        std_error,
        n_trajectories: n_traj,
        seed,
    })
}

/// Fourier image 2·Re ∫₀^{τmax} C(τ) e^{−iωτ} dτ of a uniformly sampled
/// correlation, integrating the piecewise-linear interpolant exactly so the
/// oscillatory factor introduces no additional discretization error.
fn spectrum_from_correlation(values: &[Complex64], h: f64, omega: f64) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let x = omega * h;
    let (a_cf, b_cf) = if x.abs() < 1e-3 {
        // series through x³; truncation below 1e-14
        let ix = Complex64::new(0.0, x);
        let x2 = x * x;
        let a = Complex64::new(0.5 - x2 / 24.0, 0.0) - ix / 6.0 + ix * x2 / 120.0;
        let b = Complex64::new(0.5 - x2 / 8.0, 0.0) - ix / 3.0 + ix * x2 / 30.0;
        (a, b)
    } else {
        let eix = Complex64::new(0.0, -x).exp();
        let b = (eix * Complex64::new(1.0, x) - 1.0) / (x * x);
        let a = (1.0 - eix) / Complex64::new(0.0, x) - b;
        (a, b)
    };
    let step_phase = Complex64::new(0.0, -x).exp();
    let mut phase = Complex64::new(1.0, 0.0);
    let mut full = Complex64::new(0.0, 0.0);
    for &c in values {
        full += phase * c;
        phase *= step_phase;
    }
    // phase now equals e^{−iωτ_n}; back up one step for the last sample
    let last_phase = phase / step_phase;
    let t0 = full - last_phase * values[n - 1];
    let t1 = full - values[0];
    let ft = h * (a_cf * t0 + b_cf * t1 / step_phase);
    2.0 * ft.re
}

/// Monte Carlo spectrum for comparison against the closed form.
///
/// Estimates the noise-averaged dipole-fluctuation propagator element by
/// quantum regression from the unit dipole vector over each continuing
/// realization, subtracts the long-τ plateau, and Fourier-transforms. The
/// returned provenance carries the pointwise 1σ batch-means error band.
pub fn oracle_spectrum(
    params: &PhysicalParams,
    rts: &RtsParams,
    omega_grid: &[f64],
    n_traj: usize,
    seed: u64,
) -> Result<SpectrumCurve, OracleError> {
    oracle_spectrum_with(params, rts, omega_grid, n_traj, seed, &OracleSettings::default())
}

pub fn oracle_spectrum_with(
    params: &PhysicalParams,
    rts: &RtsParams,
    omega_grid: &[f64],
    n_traj: usize,
    seed: u64,
    settings: &OracleSettings,
) -> Result<SpectrumCurve, OracleError> {
    validate_grid(omega_grid)?;
    if n_traj == 0 {
        return Err(OracleError::BadInput { reason: "need at least one trajectory".into() });
    }
    let omega_abs_max = omega_grid.iter().fold(0.0f64, |m, w| m.max(w.abs()));
    let tau_max = settings.tau_max_for(params);
    let h = settings.tau_step_for(params, rts, omega_abs_max);
    let n_tau = (tau_max / h).ceil() as usize + 1;
    let h = tau_max / (n_tau - 1) as f64;
    let tau_of = |k: usize| k as f64 * h;

    // deterministic zero-noise reference certifies the τ horizon
    let plateau_window = (n_tau / 10).max(1);
    {
        let stepper = SegmentStepper::new(params, 0.0, h);
        let path = RtsPath::zero(tau_max);
        let mut walker = PathWalker::new(&path, &stepper);
        let mut m = unit_dipole();
        let mut det = Vec::with_capacity(n_tau);
        det.push(m[3]);
        for k in 1..n_tau {
            walker.advance(&mut m, tau_of(k));
            det.push(m[3]);
        }
        let plateau: Complex64 =
            det[n_tau - plateau_window..].iter().sum::<Complex64>() / plateau_window as f64;
        let initial = (det[0] - plateau).norm();
        let residual = det[n_tau - plateau_window..]
            .iter()
            .map(|c| (c - plateau).norm())
            .fold(0.0f64, f64::max);
        if residual > PLATEAU_DECAY_TOL * initial {
            return Err(OracleError::PlateauNotReached {
                residual: residual / initial.max(f64::MIN_POSITIVE),
                threshold: PLATEAU_DECAY_TOL,
            });
        }
    }

    let sampler = sampling_rts(rts);
    let stepper = SegmentStepper::new(params, rts.amplitude, h);
    let ranges = chunk_ranges(n_traj, settings.chunk_count);
    // per-chunk mean correlation
    let chunks: Vec<(Vec<Complex64>, usize)> = ranges
        .into_par_iter()
        .map(|range| {
            let mut sum = vec![Complex64::new(0.0, 0.0); n_tau];
            let count = range.len();
            for traj in range {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ traj as u64);
                let path = sample_rts_path_with(&sampler, tau_max, &mut rng);
                let mut walker = PathWalker::new(&path, &stepper);
                let mut m = unit_dipole();
                sum[0] += m[3];
                for (k, s) in sum.iter_mut().enumerate().skip(1) {
                    walker.advance(&mut m, tau_of(k));
                    *s += m[3];
                }
            }
            let inv = 1.0 / count.max(1) as f64;
            (sum.into_iter().map(|c| c * inv).collect(), count)
        })
        .collect();

    let n = n_traj as f64;
    let mut mean = vec![Complex64::new(0.0, 0.0); n_tau];
    for (vals, count) in &chunks {
        let w = *count as f64 / n;
        for k in 0..n_tau {
            mean[k] += vals[k] * w;
        }
    }
    // elastic/coherent component: the long-τ plateau of the mean
    let plateau: Complex64 =
        mean[n_tau - plateau_window..].iter().sum::<Complex64>() / plateau_window as f64;

    let n_chunks = chunks.len();
    let intensity_and_band: Vec<(f64, f64)> = omega_grid
        .par_iter()
        .map(|&w| {
            let mut s_chunks = Vec::with_capacity(n_chunks);
            for (vals, count) in &chunks {
                let shifted: Vec<Complex64> = vals.iter().map(|c| c - plateau).collect();
                s_chunks.push((spectrum_from_correlation(&shifted, h, w), *count as f64));
            }
            let s_mean: f64 = s_chunks.iter().map(|(s, c)| s * c).sum::<f64>() / n;
            let band = if n_chunks < 2 {
                0.0
            } else {
                let var: f64 = s_chunks
                    .iter()
                    .map(|(s, c)| (c * n_chunks as f64 / n) * (s - s_mean).powi(2))
                    .sum::<f64>()
                    / (n_chunks as f64 * (n_chunks as f64 - 1.0));
                var.max(0.0).sqrt()
            };
            (s_mean, band)
        })
        .collect();

    let intensity: Vec<f64> = intensity_and_band.iter().map(|(s, _)| *s).collect();
    let std_error: Vec<f64> = intensity_and_band.iter().map(|(_, e)| *e).collect();

    Ok(SpectrumCurve::new(
        omega_grid.to_vec(),
        intensity,
        Provenance::MonteCarlo {
            params: params.clone(),
            rts: *rts,
            n_trajectories: n_traj,
            seed,
            tau_max,
            tau_step: h,
            std_error,
        },
    )?)
}

fn unit_dipole() -> Vector4<Complex64> {
    Vector4::new(
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
    )
}
