//! The fixed-velocity line shape of a driven two-level atom under telegraph
//! collision noise.
//!
//! The spectrum is the real part of a rational function of the Laplace
//! variable z, assembled from noise-dressed damping coefficients Γ₁₁, Γ₃₃,
//! Γ₁₃ = Γ₃₁ that all carry an a² prefactor (a = k·v is the Doppler
//! amplitude). At a = 0 every Γ vanishes and the expression reduces to the
//! resonant-fluorescence triplet of the noise-free atom; see
//! [`crate::reference::resonant_mollow_spectrum`] for the independently
//! derived three-Lorentzian form of that limit.
//!
//! Evaluation follows the closed form term by term in complex arithmetic (no
//! polynomial re-expansion), with one structural note: the coupling term N is
//! added to the *product* of the two denominator factors. In that grouping
//! the expression is identical (to machine precision) to the telegraph-noise
//! averaged resolvent of the Bloch fluctuation generator, which the Monte
//! Carlo oracle estimates by brute force.

use num_complex::Complex64;
use thiserror::Error;

use crate::curve::{validate_grid, CurveError, Provenance, SpectrumCurve};
use crate::params::{PhysicalParams, RtsParams};

/// Below this |P| the noise-dressed coefficients are considered to sit on a
/// pole of the averaged propagator. For γ > 0 every pole lies strictly off
/// the imaginary axis, so the guard is practically unreachable on physical
/// scans; it protects exploratory evaluations at complex z.
pub const DEFAULT_POLE_EPSILON: f64 = 1e-300;

/// Noise-dressed damping coefficients and the auxiliary quantities they are
/// built from, all evaluated at one Laplace argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaSet {
    /// Γ₁₁, the dressing of the σ⁻ (coherence) channel.
    pub gamma11: Complex64,
    /// Γ₃₃, the dressing of the σ⁺ channel (Γ₁₁ with Δ → −Δ).
    pub gamma33: Complex64,
    /// Γ₁₃ = Γ₃₁, the cross coupling; stored once.
    pub gamma13: Complex64,
    /// The resolvent denominator P of the noise-eliminated subsystem.
    pub p_denominator: Complex64,
    /// The coupling term N assembled from the Γ's.
    pub n_term: Complex64,
    /// The Laplace argument these were evaluated at.
    pub at_z: Complex64,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SpectrumError {
    /// z sits on a resonance pole of the noise-averaged propagator.
    #[error("degenerate denominator |P| = {p_abs:.3e} < {epsilon:.3e} at z = {z}")]
    DegenerateDenominator { z: Complex64, p_abs: f64, epsilon: f64 },
    #[error("spectrum value is not finite at omega = {omega}")]
    NonFiniteSpectrum { omega: f64 },
    #[error("at omega = {omega}: {source}")]
    AtOmega {
        omega: f64,
        #[source]
        source: Box<SpectrumError>,
    },
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Γ₁₁, Γ₃₃, Γ₁₃, P and N at Laplace argument `z`, with the default pole
/// guard.
pub fn damping_coefficients(
    params: &PhysicalParams,
    rts: &RtsParams,
    z: Complex64,
) -> Result<GammaSet, SpectrumError> {
    damping_coefficients_with_epsilon(params, rts, z, DEFAULT_POLE_EPSILON)
}

/// Same as [`damping_coefficients`] with an explicit pole guard εP.
pub fn damping_coefficients_with_epsilon(
    params: &PhysicalParams,
    rts: &RtsParams,
    z: Complex64,
    epsilon: f64,
) -> Result<GammaSet, SpectrumError> {
    let ga = params.gamma;
    let om2 = params.rabi_frequency * params.rabi_frequency;
    let idelta = Complex64::new(0.0, params.detuning);
    let a2 = rts.amplitude * rts.amplitude;
    let r = rts.switch_rate;

    let zr = z + r;
    // P = (z + 1/τ_a)·{(z+γ+1/τ_a+iΔ)·[(z+γ+1/τ_a−iΔ)(z+2γ+1/τ_a) + Ω₀²] − iΔΩ₀²}
    let p = zr
        * ((zr + ga + idelta) * ((zr + ga - idelta) * (zr + 2.0 * ga) + om2)
            - idelta * om2);

    if rts.amplitude == 0.0 {
        // every Γ carries an a² prefactor; keep the limit exact
        let zero = Complex64::new(0.0, 0.0);
        return Ok(GammaSet {
            gamma11: zero,
            gamma33: zero,
            gamma13: zero,
            p_denominator: p,
            n_term: -idelta * om2,
            at_z: z,
        });
    }

    if p.norm() < epsilon {
        return Err(SpectrumError::DegenerateDenominator {
            z,
            p_abs: p.norm(),
            epsilon,
        });
    }

    let pref = a2 / p * zr;
    let gamma11 = pref * ((zr + ga - idelta) * (zr + 2.0 * ga) + om2 / 2.0);
    let gamma33 = pref * ((zr + ga + idelta) * (zr + 2.0 * ga) + om2 / 2.0);
    let gamma13 = -pref * om2 / 2.0;
    // N = −{(z+2γ)·[¼(Γ₁₁−Γ₃₃)² − iΔ(Γ₃₃+2Γ₁₃−Γ₁₁)] + iΔΩ₀²}
    let diff = gamma11 - gamma33;
    let n_term = -((z + 2.0 * ga) * (0.25 * diff * diff - idelta * (gamma33 + 2.0 * gamma13 - gamma11))
        + idelta * om2);

    Ok(GammaSet {
        gamma11,
        gamma33,
        gamma13,
        p_denominator: p,
        n_term,
        at_z: z,
    })
}

/// The spectrum as a complex resolvent value at arbitrary Laplace argument z.
/// The physical spectrum is 2·Re of this at z = iω.
fn resolvent_at(params: &PhysicalParams, rts: &RtsParams, z: Complex64) -> Result<Complex64, SpectrumError> {
    let gs = damping_coefficients(params, rts, z)?;
    let ga = params.gamma;
    let om2 = params.rabi_frequency * params.rabi_frequency;
    let idelta = Complex64::new(0.0, params.detuning);
    let half_sum = 0.5 * (gs.gamma11 + gs.gamma33);

    let numerator = (z + 2.0 * ga) * (z + ga + gs.gamma11 + idelta) + om2 / 2.0;
    let den_coh = z + ga + half_sum + gs.gamma13 + idelta;
    let den_pop = (z + 2.0 * ga) * (z + ga + half_sum - gs.gamma13 - idelta) + om2;
    Ok(numerator / (den_coh * den_pop + gs.n_term))
}

/// S_RTS(v, ω): the fixed-velocity spectrum at z = iω.
pub fn spectrum_at(params: &PhysicalParams, rts: &RtsParams, omega: f64) -> Result<f64, SpectrumError> {
    let z = Complex64::new(0.0, omega);
    let value = resolvent_at(params, rts, z).map_err(|source| SpectrumError::AtOmega {
        omega,
        source: Box::new(source),
    })?;
    let s = 2.0 * value.re;
    if !s.is_finite() {
        return Err(SpectrumError::NonFiniteSpectrum { omega });
    }
    Ok(s)
}

/// Element-wise [`spectrum_at`] over a strictly increasing ω grid.
pub fn spectrum_curve_fixed_v(
    params: &PhysicalParams,
    rts: &RtsParams,
    omega_grid: &[f64],
) -> Result<SpectrumCurve, SpectrumError> {
    validate_grid(omega_grid)?;
    let intensity = omega_grid
        .iter()
        .map(|&w| spectrum_at(params, rts, w))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SpectrumCurve::new(
        omega_grid.to_vec(),
        intensity,
        Provenance::FixedV {
            params: params.clone(),
            rts: *rts,
        },
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::UnitScale;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn params(om: f64, de: f64, ga: f64) -> PhysicalParams {
        PhysicalParams::new(om, de, ga, 0.01, 0.9, 1.6e-4, UnitScale::GammaUnits).unwrap()
    }

    #[test]
    fn gammas_vanish_at_zero_amplitude() {
        // every Γ carries an a² prefactor; N reduces to −iΔΩ₀²
        let p = params(2.0, 0.7, 0.2);
        let gs = damping_coefficients(&p, &RtsParams::zero(), Complex64::new(0.0, 0.5)).unwrap();
        assert_eq!(gs.gamma11, Complex64::new(0.0, 0.0));
        assert_eq!(gs.gamma33, Complex64::new(0.0, 0.0));
        assert_eq!(gs.gamma13, Complex64::new(0.0, 0.0));
        assert_eq!(gs.n_term, Complex64::new(0.0, -0.7 * 4.0));
    }

    #[test]
    fn gamma13_carries_rabi_squared_factor() {
        // Ω₀ enters Γ₁₃ only through the Ω₀² factor: scaling check at fixed z, a, r
        let p1 = params(1e-8, 0.3, 0.2);
        let rts = RtsParams::raw(0.05, 2.0, 1.0);
        let gs = damping_coefficients(&p1, &rts, Complex64::new(0.0, 1.0)).unwrap();
        assert!(gs.gamma13.norm() < 1e-17);
    }

    #[test]
    fn golden_gamma_set() {
        // frozen from an independent 50-digit evaluation of the closed form
        let p = params(2.0, 0.0, 0.2);
        let rts = RtsParams::raw(0.05, 0.9 * std::f64::consts::PI * 5.0, 5.0);
        let gs = damping_coefficients(&p, &rts, Complex64::new(0.0, 1.0)).unwrap();
        let tol = 1e-12;
        assert_relative_eq!(gs.gamma11.re, 1.7193164891543901e-4, max_relative = tol);
        assert_relative_eq!(gs.gamma11.im, -1.1770870672196493e-5, max_relative = tol);
        assert_eq!(gs.gamma11, gs.gamma33);
        assert_relative_eq!(gs.gamma13.re, -1.5961239410897331e-6, max_relative = tol);
        assert_relative_eq!(gs.gamma13.im, 3.3248095708715345e-7, max_relative = tol);
        assert_relative_eq!(gs.p_denominator.re, 41818.832609269986, max_relative = tol);
        assert_relative_eq!(gs.p_denominator.im, 11843.670158403305, max_relative = tol);
        assert_abs_diff_eq!(gs.n_term.norm(), 0.0, epsilon = 1e-18);
    }

    #[test]
    fn golden_spectrum_values() {
        // frozen from the same independent high-precision evaluation
        let rts = RtsParams::raw(0.05, 0.9 * std::f64::consts::PI * 5.0, 5.0);
        let s = spectrum_at(&params(2.0, 0.0, 0.2), &rts, 1.0).unwrap();
        assert_relative_eq!(s, 0.37852807306315726, max_relative = 1e-13);

        let rts2 = RtsParams::raw(0.5, 0.7, 1.0);
        let s2 = spectrum_at(&params(2.0, 1.0, 0.2), &rts2, 1.3).unwrap();
        assert_relative_eq!(s2, 0.51263997014814736, max_relative = 1e-13);

        let rts3 = RtsParams::raw(0.2236, 63.2, 1.0);
        let s3 = spectrum_at(&params(1.0, -1.0, 0.2), &rts3, -1.4).unwrap();
        assert_relative_eq!(s3, 5.9965753355853463, max_relative = 1e-13);
    }

    #[test]
    fn resonant_symmetry() {
        // Δ = 0 makes every polynomial coefficient real, so S(−ω) = S(ω)
        let p = params(2.0, 0.0, 0.2);
        let rts = RtsParams::raw(0.5, 0.7, 1.0);
        let mut max_s: f64 = 0.0;
        let mut max_diff: f64 = 0.0;
        for i in 0..200 {
            let w = 0.05 * (i as f64 + 0.5);
            let s1 = spectrum_at(&p, &rts, w).unwrap();
            let s2 = spectrum_at(&p, &rts, -w).unwrap();
            max_s = max_s.max(s1.abs());
            max_diff = max_diff.max((s1 - s2).abs());
        }
        assert!(max_diff <= 1e-10 * max_s, "residual {}", max_diff / max_s);
    }

    #[test]
    fn mirror_property() {
        // S(ω; Δ) = S(−ω; −Δ): conjugating z and flipping Δ conjugates everything
        let rts = RtsParams::raw(0.7, 1.3, 1.0);
        let pp = params(1.5, 0.8, 0.3);
        let pm = params(1.5, -0.8, 0.3);
        let mut max_s: f64 = 0.0;
        let mut max_diff: f64 = 0.0;
        for i in -150..=150 {
            let w = 0.04 * i as f64;
            let s1 = spectrum_at(&pp, &rts, w).unwrap();
            let s2 = spectrum_at(&pm, &rts, -w).unwrap();
            max_s = max_s.max(s1.abs());
            max_diff = max_diff.max((s1 - s2).abs());
        }
        assert!(max_diff <= 1e-10 * max_s, "residual {}", max_diff / max_s);
    }

    #[test]
    fn gamma_prefactor_quadratic_scaling() {
        // with P's argument held fixed, a → λa scales each Γ by λ² exactly;
        // recompute at λ = 2 and compare against the dressed recomputation
        let p = params(2.0, 0.4, 0.2);
        let z = Complex64::new(0.0, 0.9);
        let g1 = damping_coefficients(&p, &RtsParams::raw(0.1, 1.1, 1.0), z).unwrap();
        let g2 = damping_coefficients(&p, &RtsParams::raw(0.2, 1.1, 1.0), z).unwrap();
        assert_relative_eq!(g2.gamma11.re, 4.0 * g1.gamma11.re, max_relative = 1e-12);
        assert_relative_eq!(g2.gamma11.im, 4.0 * g1.gamma11.im, max_relative = 1e-12);
        assert_relative_eq!(g2.gamma33.norm(), 4.0 * g1.gamma33.norm(), max_relative = 1e-12);
        assert_relative_eq!(g2.gamma13.norm(), 4.0 * g1.gamma13.norm(), max_relative = 1e-12);
    }

    #[test]
    fn degenerate_denominator_detected() {
        // with a > 0 and rate = 0, P vanishes at z = 0
        let p = params(2.0, 0.0, 0.2);
        let rts = RtsParams::raw(0.5, 0.0, 1.0);
        let err = damping_coefficients_with_epsilon(&p, &rts, Complex64::new(0.0, 0.0), 1e-12)
            .unwrap_err();
        assert!(matches!(err, SpectrumError::DegenerateDenominator { .. }));
    }

    #[test]
    fn single_point_curve() {
        let p = params(2.0, 0.0, 1.0);
        let c = spectrum_curve_fixed_v(&p, &RtsParams::zero(), &[0.0]).unwrap();
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn rejects_unsorted_grid() {
        let p = params(2.0, 0.0, 1.0);
        let err = spectrum_curve_fixed_v(&p, &RtsParams::zero(), &[0.0, -1.0]).unwrap_err();
        assert!(matches!(err, SpectrumError::Curve(_)));
    }
}
