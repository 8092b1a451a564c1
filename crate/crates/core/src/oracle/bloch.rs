//! Exact piecewise propagation of the optical Bloch equations along a
//! telegraph path.
//!
//! The density-matrix components m = (ρ_ee, ρ_gg, ρ_eg, ρ_ge) evolve under
//! the rotating-frame generator (δ is the instantaneous detuning):
//!
//! ```text
//! ρ̇_ee = −2γ ρ_ee + i(Ω₀/2)(ρ_eg − ρ_ge)
//! ρ̇_gg = +2γ ρ_ee − i(Ω₀/2)(ρ_eg − ρ_ge)
//! ρ̇_eg = −(γ + iδ) ρ_eg + i(Ω₀/2)(ρ_ee − ρ_gg)
//! ρ̇_ge = −(γ − iδ) ρ_ge − i(Ω₀/2)(ρ_ee − ρ_gg)
//! ```
//!
//! Between flips the detuning δ = Δ + x(t) is constant, so each segment is
//! advanced by the exact matrix exponential of the 4×4 generator; no
//! step-size error enters. The same generator propagates non-Hermitian
//! regression vectors, which is how two-time quantities are built.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use thiserror::Error;

use crate::curve::CurveError;
use crate::params::PhysicalParams;

use super::rts::RtsPath;

/// Tolerance on trace drift, population range and coherence physicality.
pub const PHYSICALITY_TOL: f64 = 1e-9;

/// Atomic state in the rotating frame: the slowly varying coherence ρ_eg and
/// the two populations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochState {
    pub coherence: Complex64,
    pub ground: f64,
    pub excited: f64,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum OracleError {
    #[error("non-physical state at t = {t}: {reason}")]
    NonPhysicalState { t: f64, reason: String },
    #[error("pre-τ transient not settled: relative population drift {drift:.3e} > {threshold:.3e} over the last 10% of burn-in")]
    InsufficientEquilibration { drift: f64, threshold: f64 },
    #[error("correlation has not decayed to its plateau: residual {residual:.3e} of the initial value > {threshold:.3e}")]
    PlateauNotReached { residual: f64, threshold: f64 },
    #[error("invalid input: {reason}")]
    BadInput { reason: String },
    #[error(transparent)]
    Curve(#[from] CurveError),
}

impl BlochState {
    pub fn new(coherence: Complex64, ground: f64, excited: f64) -> Result<Self, OracleError> {
        let s = Self { coherence, ground, excited };
        s.check_physical(0.0)?;
        Ok(s)
    }

    pub fn ground_state() -> Self {
        Self { coherence: Complex64::new(0.0, 0.0), ground: 1.0, excited: 0.0 }
    }

    pub fn excited_state() -> Self {
        Self { coherence: Complex64::new(0.0, 0.0), ground: 0.0, excited: 1.0 }
    }

    pub fn check_physical(&self, t: f64) -> Result<(), OracleError> {
        let tol = PHYSICALITY_TOL;
        for (name, p) in [("ground", self.ground), ("excited", self.excited)] {
            if !(-tol..=1.0 + tol).contains(&p) {
                return Err(OracleError::NonPhysicalState {
                    t,
                    reason: format!("{name} population {p} outside [0, 1]"),
                });
            }
        }
        let trace = self.ground + self.excited;
        if (trace - 1.0).abs() > tol {
            return Err(OracleError::NonPhysicalState {
                t,
                reason: format!("population sum {trace} drifted from 1"),
            });
        }
        if self.coherence.norm_sqr() > self.ground * self.excited + tol {
            return Err(OracleError::NonPhysicalState {
                t,
                reason: format!(
                    "|coherence|² = {} exceeds ρ_gg·ρ_ee = {}",
                    self.coherence.norm_sqr(),
                    self.ground * self.excited
                ),
            });
        }
        Ok(())
    }

    fn to_vector(self) -> Vector4<Complex64> {
        Vector4::new(
            Complex64::new(self.excited, 0.0),
            Complex64::new(self.ground, 0.0),
            self.coherence,
            self.coherence.conj(),
        )
    }

    fn from_vector(v: &Vector4<Complex64>) -> Self {
        // fold the Hermiticity that exact arithmetic would preserve
        let coherence = 0.5 * (v[2] + v[3].conj());
        Self {
            coherence,
            ground: v[1].re,
            excited: v[0].re,
        }
    }
}

/// The 4×4 rotating-frame generator at constant detuning `delta`.
pub fn bloch_generator(params: &PhysicalParams, delta: f64) -> Matrix4<Complex64> {
    let ga = params.gamma;
    let half_om = 0.5 * params.rabi_frequency;
    let z = Complex64::new(0.0, 0.0);
    let iho = Complex64::new(0.0, half_om);
    let g2 = Complex64::new(2.0 * ga, 0.0);
    Matrix4::new(
        -g2, z, iho, -iho,
        g2, z, -iho, iho,
        iho, -iho, Complex64::new(-ga, -delta), z,
        -iho, iho, z, Complex64::new(-ga, delta),
    )
}

/// Segment stepper for one (params, amplitude) pair: the generator at
/// δ = Δ ± a plus a cached exponential for the repeated uniform step.
pub struct SegmentStepper {
    gen_plus: Matrix4<Complex64>,
    gen_minus: Matrix4<Complex64>,
    cached_dt: f64,
    step_plus: Matrix4<Complex64>,
    step_minus: Matrix4<Complex64>,
}

impl SegmentStepper {
    /// `cache_dt` is the uniform output-grid step that dominates the walk;
    /// pass the grid spacing (or any positive value when no uniform grid is
    /// used — the cache simply never hits).
    pub fn new(params: &PhysicalParams, amplitude: f64, cache_dt: f64) -> Self {
        let gen_plus = bloch_generator(params, params.detuning + amplitude);
        let gen_minus = bloch_generator(params, params.detuning - amplitude);
        let step_plus = (gen_plus * Complex64::new(cache_dt, 0.0)).exp();
        let step_minus = (gen_minus * Complex64::new(cache_dt, 0.0)).exp();
        Self { gen_plus, gen_minus, cached_dt: cache_dt, step_plus, step_minus }
    }

    fn step(&self, v: &Vector4<Complex64>, sign: f64, dt: f64) -> Vector4<Complex64> {
        if (dt - self.cached_dt).abs() <= 1e-9 * self.cached_dt {
            if sign > 0.0 {
                self.step_plus * v
            } else {
                self.step_minus * v
            }
        } else {
            let gen = if sign > 0.0 { &self.gen_plus } else { &self.gen_minus };
            (gen * Complex64::new(dt, 0.0)).exp() * v
        }
    }
}

/// Cursor walking a state vector along a path, flip by flip.
pub struct PathWalker<'a> {
    path: &'a RtsPath,
    stepper: &'a SegmentStepper,
    t: f64,
    flip_idx: usize,
    sign: f64,
}

impl<'a> PathWalker<'a> {
    pub fn new(path: &'a RtsPath, stepper: &'a SegmentStepper) -> Self {
        Self {
            path,
            stepper,
            t: 0.0,
            flip_idx: 0,
            sign: f64::from(path.initial_sign),
        }
    }

    /// Advance `v` exactly from the current time to `to`.
    pub fn advance(&mut self, v: &mut Vector4<Complex64>, to: f64) {
        debug_assert!(to >= self.t && to <= self.path.t_max + 1e-9);
        while self.flip_idx < self.path.flip_times.len() && self.path.flip_times[self.flip_idx] <= to {
            let at = self.path.flip_times[self.flip_idx];
            if at > self.t {
                *v = self.stepper.step(v, self.sign, at - self.t);
                self.t = at;
            }
            self.sign = -self.sign;
            self.flip_idx += 1;
        }
        if to > self.t {
            *v = self.stepper.step(v, self.sign, to - self.t);
            self.t = to;
        }
    }
}

/// Propagate `state0` (taken at t = 0) along the path, sampling the state at
/// each point of `t_grid`.
pub fn propagate_bloch(
    params: &PhysicalParams,
    path: &RtsPath,
    state0: &BlochState,
    t_grid: &[f64],
) -> Result<Vec<BlochState>, OracleError> {
    if t_grid.is_empty() {
        return Err(OracleError::BadInput { reason: "empty time grid".into() });
    }
    for (i, &t) in t_grid.iter().enumerate() {
        if !(0.0..=path.t_max).contains(&t) {
            return Err(OracleError::BadInput {
                reason: format!("t_grid[{i}] = {t} outside [0, {}]", path.t_max),
            });
        }
        if i > 0 && t_grid[i] <= t_grid[i - 1] {
            return Err(OracleError::BadInput {
                reason: format!("t_grid not strictly increasing at index {i}"),
            });
        }
    }
    state0.check_physical(0.0)?;
    let cache_dt = if t_grid.len() >= 2 { t_grid[1] - t_grid[0] } else { 1.0 };
    let stepper = SegmentStepper::new(params, path.amplitude, cache_dt);
    let mut walker = PathWalker::new(path, &stepper);
    let mut v = state0.to_vector();
    let mut out = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        walker.advance(&mut v, t);
        let state = BlochState::from_vector(&v);
        state.check_physical(t)?;
        out.push(state);
    }
    Ok(out)
}
