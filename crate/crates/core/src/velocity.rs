//! Maxwell–Boltzmann averaging of the fixed-velocity spectrum.
//!
//! The thermal spectrum is ∫₀^∞ f(v)·S_RTS(v, ω) dv with the speed density
//! f(v) = 4π (c/2π)^{3/2} v² exp(−c v²/2). The integrand is smooth and
//! exponentially cut, so truncated Gauss–Legendre converges fast; adaptive
//! Simpson is retained as a cross-check scheme.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{validate_grid, CurveError, Provenance, SpectrumCurve};
use crate::params::PhysicalParams;
use crate::quadrature::{adaptive_simpson, gauss_legendre_on};
use crate::spectrum::{spectrum_at, SpectrumError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadratureScheme {
    GaussLegendreTruncated,
    AdaptiveSimpson,
}

/// Discretization of the velocity integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub scheme: QuadratureScheme,
    /// Node count for the fixed rule (also the initial sampling budget hint
    /// for the adaptive one).
    pub node_count: usize,
    /// Upper truncation speed v_max. The default puts c·v_max²/2 = 40, i.e.
    /// tail mass ~ e⁻⁴⁰ ≪ 1e-15.
    pub truncation_speed: f64,
    pub rel_tolerance: f64,
}

impl QuadratureSpec {
    /// Default rule for a given thermal parameter c: 96-node Gauss–Legendre
    /// on [0, √(80/c)], relative tolerance 1e-8.
    pub fn default_for(thermal_c: f64) -> Self {
        Self {
            scheme: QuadratureScheme::GaussLegendreTruncated,
            node_count: 96,
            truncation_speed: (80.0 / thermal_c).sqrt(),
            rel_tolerance: 1e-8,
        }
    }

    pub fn validate(&self) -> Result<(), VelocityError> {
        if self.node_count < 8 {
            return Err(VelocityError::BadSpec {
                reason: format!("node_count must be >= 8, got {}", self.node_count),
            });
        }
        if !(self.truncation_speed > 0.0) {
            return Err(VelocityError::BadSpec {
                reason: format!("truncation_speed must be > 0, got {}", self.truncation_speed),
            });
        }
        if !(self.rel_tolerance > 0.0) {
            return Err(VelocityError::BadSpec {
                reason: format!("rel_tolerance must be > 0, got {}", self.rel_tolerance),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum VelocityError {
    #[error("domain error: {reason}")]
    Domain { reason: String },
    #[error("invalid quadrature spec: {reason}")]
    BadSpec { reason: String },
    #[error("quadrature did not converge: error estimate {estimate:.3e} > tolerance {tolerance:.3e}")]
    QuadratureNotConverged { estimate: f64, tolerance: f64 },
    #[error("at speed v = {speed}: {source}")]
    AtSpeed {
        speed: f64,
        #[source]
        source: SpectrumError,
    },
    #[error("at omega = {omega}: {source}")]
    AtOmega {
        omega: f64,
        #[source]
        source: Box<VelocityError>,
    },
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Maxwell–Boltzmann speed density 4π (c/2π)^{3/2} v² exp(−c v²/2).
pub fn maxwell_boltzmann_pdf(v: f64, thermal_c: f64) -> Result<f64, VelocityError> {
    if !(thermal_c > 0.0) {
        return Err(VelocityError::Domain {
            reason: format!("thermal_c must be > 0, got {thermal_c}"),
        });
    }
    if !(v >= 0.0) {
        return Err(VelocityError::Domain {
            reason: format!("speed must be >= 0, got {v}"),
        });
    }
    let norm = 4.0 * std::f64::consts::PI
        * (thermal_c / (2.0 * std::f64::consts::PI)).powf(1.5);
    Ok(norm * v * v * (-thermal_c * v * v / 2.0).exp())
}

/// Precomputed velocity rule: nodes with their density-times-weight factors.
struct VelocityRule {
    speeds: Vec<f64>,
    /// f(v_i)·w_i
    factors: Vec<f64>,
}

fn build_rule(params: &PhysicalParams, quad: &QuadratureSpec) -> Result<VelocityRule, VelocityError> {
    let (speeds, weights) = gauss_legendre_on(quad.node_count, 0.0, quad.truncation_speed);
    let factors = speeds
        .iter()
        .zip(&weights)
        .map(|(&v, &w)| maxwell_boltzmann_pdf(v, params.thermal_c).map(|f| f * w))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VelocityRule { speeds, factors })
}

fn integrate_with_rule(
    params: &PhysicalParams,
    rule: &VelocityRule,
    omega: f64,
) -> Result<f64, VelocityError> {
    let mut acc = 0.0;
    for (&v, &fw) in rule.speeds.iter().zip(&rule.factors) {
        let rts = params.rts_at_speed(v);
        let s = spectrum_at(params, &rts, omega)
            .map_err(|source| VelocityError::AtSpeed { speed: v, source })?;
        acc += fw * s;
    }
    Ok(acc)
}

fn integrate_adaptive(
    params: &PhysicalParams,
    quad: &QuadratureSpec,
    omega: f64,
) -> Result<f64, VelocityError> {
    let mut f = |v: f64| -> Result<f64, VelocityError> {
        let rts = params.rts_at_speed(v);
        let s = spectrum_at(params, &rts, omega)
            .map_err(|source| VelocityError::AtSpeed { speed: v, source })?;
        Ok(maxwell_boltzmann_pdf(v, params.thermal_c)? * s)
    };
    let r = adaptive_simpson(&mut f, 0.0, quad.truncation_speed, quad.rel_tolerance)?;
    let tol = quad.rel_tolerance * r.value.abs().max(f64::MIN_POSITIVE);
    if !r.converged && r.error_estimate > tol {
        return Err(VelocityError::QuadratureNotConverged {
            estimate: r.error_estimate,
            tolerance: tol,
        });
    }
    Ok(r.value)
}

/// Thermal spectrum at a single ω.
///
/// The fixed Gauss–Legendre scheme is Richardson-checked against the doubled
/// node count; the adaptive scheme carries its own error estimate.
pub fn averaged_spectrum(
    params: &PhysicalParams,
    omega: f64,
    quad: &QuadratureSpec,
) -> Result<f64, VelocityError> {
    quad.validate()?;
    match quad.scheme {
        QuadratureScheme::GaussLegendreTruncated => {
            let rule = build_rule(params, quad)?;
            let value = integrate_with_rule(params, &rule, omega)?;
            let fine = QuadratureSpec {
                node_count: quad.node_count * 2,
                ..*quad
            };
            let rule2 = build_rule(params, &fine)?;
            let value2 = integrate_with_rule(params, &rule2, omega)?;
            let estimate = (value - value2).abs();
            let tol = quad.rel_tolerance * value2.abs().max(f64::MIN_POSITIVE);
            if estimate > tol {
                return Err(VelocityError::QuadratureNotConverged { estimate, tolerance: tol });
            }
            Ok(value2)
        }
        QuadratureScheme::AdaptiveSimpson => integrate_adaptive(params, quad, omega),
    }
}

/// Thermal spectrum over a grid. Nodes, weights and density factors are
/// computed once and shared across ω; per-ω sums run in parallel. One
/// Richardson check (node count doubled at the grid midpoint) is stored in
/// the provenance.
pub fn averaged_spectrum_curve(
    params: &PhysicalParams,
    omega_grid: &[f64],
    quad: &QuadratureSpec,
) -> Result<SpectrumCurve, VelocityError> {
    quad.validate()?;
    validate_grid(omega_grid)?;

    let intensity: Vec<f64> = match quad.scheme {
        QuadratureScheme::GaussLegendreTruncated => {
            let rule = build_rule(params, quad)?;
            omega_grid
                .par_iter()
                .map(|&w| {
                    integrate_with_rule(params, &rule, w).map_err(|source| {
                        VelocityError::AtOmega { omega: w, source: Box::new(source) }
                    })
                })
                .collect::<Result<Vec<_>, _>>()?
        }
        QuadratureScheme::AdaptiveSimpson => omega_grid
            .par_iter()
            .map(|&w| {
                integrate_adaptive(params, quad, w).map_err(|source| VelocityError::AtOmega {
                    omega: w,
                    source: Box::new(source),
                })
            })
            .collect::<Result<Vec<_>, _>>()?,
    };

    // one-time Richardson check at the grid midpoint
    let mid = omega_grid[omega_grid.len() / 2];
    let richardson_error = match quad.scheme {
        QuadratureScheme::GaussLegendreTruncated => {
            let fine = QuadratureSpec { node_count: quad.node_count * 2, ..*quad };
            let rule = build_rule(params, quad)?;
            let rule2 = build_rule(params, &fine)?;
            let coarse = integrate_with_rule(params, &rule, mid)?;
            let refined = integrate_with_rule(params, &rule2, mid)?;
            let estimate = (coarse - refined).abs();
            let tol = quad.rel_tolerance * refined.abs().max(f64::MIN_POSITIVE);
            if estimate > tol {
                return Err(VelocityError::QuadratureNotConverged { estimate, tolerance: tol });
            }
            estimate / refined.abs().max(f64::MIN_POSITIVE)
        }
        QuadratureScheme::AdaptiveSimpson => quad.rel_tolerance,
    };

    Ok(SpectrumCurve::new(
        omega_grid.to_vec(),
        intensity,
        Provenance::Thermal {
            params: params.clone(),
            quadrature: *quad,
            richardson_error,
        },
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::symmetric_grid;
    use crate::params::{RtsParams, UnitScale};
    use approx::assert_relative_eq;

    fn fig1a_params(om: f64) -> PhysicalParams {
        PhysicalParams::new(om, 0.0, 1.0, 0.01, 0.9, 1.6e-4, UnitScale::GammaUnits).unwrap()
    }

    #[test]
    fn pdf_vanishes_at_zero_speed() {
        assert_eq!(maxwell_boltzmann_pdf(0.0, 1.6e-4).unwrap(), 0.0);
    }

    #[test]
    fn pdf_mode_at_sqrt_two_over_c() {
        // d/dv (v² e^{−cv²/2}) = 0 at v* = √(2/c); checked by a derivative sign change
        let c: f64 = 1.6e-4;
        let vstar = (2.0 / c).sqrt();
        assert_relative_eq!(vstar, 111.80339887498948, max_relative = 1e-12);
        let h = 1e-4;
        let left = maxwell_boltzmann_pdf(vstar - h, c).unwrap();
        let peak = maxwell_boltzmann_pdf(vstar, c).unwrap();
        let right = maxwell_boltzmann_pdf(vstar + h, c).unwrap();
        assert!(peak > left && peak > right);
    }

    #[test]
    fn pdf_rejects_bad_domain() {
        assert!(maxwell_boltzmann_pdf(-1.0, 1.0).is_err());
        assert!(maxwell_boltzmann_pdf(1.0, 0.0).is_err());
    }

    #[test]
    fn density_normalizes_on_truncated_range() {
        for c in [1.6e-4, 1e-2, 1.0] {
            let quad = QuadratureSpec::default_for(c);
            let (v, w) = gauss_legendre_on(quad.node_count, 0.0, quad.truncation_speed);
            let total: f64 = v
                .iter()
                .zip(&w)
                .map(|(&vi, &wi)| maxwell_boltzmann_pdf(vi, c).unwrap() * wi)
                .sum();
            assert!(
                total <= 1.0 + 1e-12 && total >= 1.0 - 1e-10,
                "c = {c}: mass {total}"
            );
        }
    }

    #[test]
    fn zero_wave_number_reduces_to_fixed_v() {
        // a = k·v = 0 at every node, and the switch rate only multiplies a² terms
        let p = PhysicalParams::new(2.0, 0.3, 0.4, 0.0, 0.9, 1.6e-4, UnitScale::GammaUnits)
            .unwrap();
        let quad = QuadratureSpec::default_for(p.thermal_c);
        for w in [-1.0, 0.0, 0.7, 2.2] {
            let avg = averaged_spectrum(&p, w, &quad).unwrap();
            let fixed = spectrum_at(&p, &RtsParams::zero(), w).unwrap();
            assert_relative_eq!(avg, fixed, max_relative = 1e-12);
        }
    }

    #[test]
    fn node_refinement_agrees() {
        let p = fig1a_params(6.0);
        let q64 = QuadratureSpec {
            node_count: 64,
            ..QuadratureSpec::default_for(p.thermal_c)
        };
        let q128 = QuadratureSpec { node_count: 128, ..q64 };
        let a = averaged_spectrum(&p, 0.0, &q64).unwrap();
        let b = averaged_spectrum(&p, 0.0, &q128).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-8);
    }

    #[test]
    fn adaptive_cross_checks_gauss() {
        let p = fig1a_params(6.0);
        let gauss = QuadratureSpec::default_for(p.thermal_c);
        let simpson = QuadratureSpec {
            scheme: QuadratureScheme::AdaptiveSimpson,
            rel_tolerance: 1e-9,
            ..gauss
        };
        for w in [0.0, 3.1, 6.0] {
            let a = averaged_spectrum(&p, w, &gauss).unwrap();
            let b = averaged_spectrum(&p, w, &simpson).unwrap();
            assert_relative_eq!(a, b, max_relative = 1e-7);
        }
    }

    #[test]
    fn thermal_curve_keeps_resonant_symmetry() {
        let p = fig1a_params(4.0);
        let grid = symmetric_grid(8.0, 81);
        let quad = QuadratureSpec {
            node_count: 48,
            ..QuadratureSpec::default_for(p.thermal_c)
        };
        let curve = averaged_spectrum_curve(&p, &grid, &quad).unwrap();
        let n = curve.len();
        let max = curve.max_abs_intensity();
        for i in 0..n {
            let d = (curve.intensity[i] - curve.intensity[n - 1 - i]).abs();
            assert!(d <= 1e-8 * max);
        }
    }

    #[test]
    fn single_point_thermal_curve() {
        let p = fig1a_params(2.0);
        let quad = QuadratureSpec {
            node_count: 32,
            ..QuadratureSpec::default_for(p.thermal_c)
        };
        let c = averaged_spectrum_curve(&p, &[0.5], &quad).unwrap();
        assert_eq!(c.len(), 1);
        assert!(matches!(c.provenance, Provenance::Thermal { .. }));
    }

    #[test]
    fn rejects_tiny_node_count() {
        let p = fig1a_params(2.0);
        let quad = QuadratureSpec {
            node_count: 4,
            ..QuadratureSpec::default_for(p.thermal_c)
        };
        assert!(matches!(
            averaged_spectrum(&p, 0.0, &quad),
            Err(VelocityError::BadSpec { .. })
        ));
    }
}
