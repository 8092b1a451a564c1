//! Sampled spectra with provenance.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::params::{PhysicalParams, RtsParams};
use crate::velocity::QuadratureSpec;

/// How a curve was produced, with enough detail to reproduce it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Provenance {
    /// Fixed-velocity evaluation of the closed-form spectrum; no averaging.
    FixedV { params: PhysicalParams, rts: RtsParams },
    /// Maxwell–Boltzmann-averaged spectrum.
    Thermal {
        params: PhysicalParams,
        quadrature: QuadratureSpec,
        /// One-time Richardson estimate: relative change when the node count
        /// is doubled, evaluated at the grid midpoint.
        richardson_error: f64,
    },
    /// Monte Carlo line-shape estimate from telegraph-noise trajectories.
    MonteCarlo {
        params: PhysicalParams,
        rts: RtsParams,
        n_trajectories: usize,
        seed: u64,
        tau_max: f64,
        tau_step: f64,
        /// Pointwise 1σ statistical error band (batch means), same length as
        /// the ω grid.
        std_error: Vec<f64>,
    },
}

/// A sampled spectrum: strictly increasing ω grid plus real intensities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumCurve {
    pub omega: Vec<f64>,
    pub intensity: Vec<f64>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CurveError {
    #[error("omega grid is empty")]
    EmptyGrid,
    #[error("omega grid is not strictly increasing at index {index}")]
    NotIncreasing { index: usize },
    #[error("intensity is not finite at omega = {omega}")]
    NonFiniteIntensity { omega: f64 },
    #[error("omega/intensity length mismatch: {omega_len} vs {intensity_len}")]
    LengthMismatch { omega_len: usize, intensity_len: usize },
}

impl SpectrumCurve {
    pub fn new(omega: Vec<f64>, intensity: Vec<f64>, provenance: Provenance) -> Result<Self, CurveError> {
        validate_grid(&omega)?;
        if omega.len() != intensity.len() {
            return Err(CurveError::LengthMismatch {
                omega_len: omega.len(),
                intensity_len: intensity.len(),
            });
        }
        if let Some(i) = intensity.iter().position(|s| !s.is_finite()) {
            return Err(CurveError::NonFiniteIntensity { omega: omega[i] });
        }
        Ok(Self {
            omega,
            intensity,
            provenance,
        })
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    pub fn max_abs_intensity(&self) -> f64 {
        self.intensity.iter().fold(0.0, |m, s| m.max(s.abs()))
    }
}

/// Check that a grid is non-empty and strictly increasing.
pub fn validate_grid(omega: &[f64]) -> Result<(), CurveError> {
    if omega.is_empty() {
        return Err(CurveError::EmptyGrid);
    }
    for i in 1..omega.len() {
        if !(omega[i] > omega[i - 1]) {
            return Err(CurveError::NotIncreasing { index: i });
        }
    }
    Ok(())
}

/// Uniform grid of `count` points from `min` to `max` inclusive.
pub fn linspace(min: f64, max: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2, "linspace needs at least 2 points");
    let step = (max - min) / (count - 1) as f64;
    (0..count)
        .map(|i| {
            if i == count - 1 {
                max
            } else {
                min + step * i as f64
            }
        })
        .collect()
}

/// Uniform grid symmetric about 0: odd count, ω_i = −ω_{n−1−i} exactly.
pub fn symmetric_grid(half_range: f64, count: usize) -> Vec<f64> {
    assert!(count >= 3 && count % 2 == 1, "symmetric grid needs odd count >= 3");
    let half = count / 2;
    let step = half_range / half as f64;
    (0..count)
        .map(|i| {
            let j = i as i64 - half as i64;
            // build from |j| so the two halves mirror bit-exactly
            let mag = step * j.unsigned_abs() as f64;
            if j < 0 {
                -mag
            } else {
                mag
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::UnitScale;

    fn prov() -> Provenance {
        Provenance::FixedV {
            params: PhysicalParams::new(2.0, 0.0, 1.0, 0.0, 0.0, 1.0, UnitScale::GammaUnits)
                .unwrap(),
            rts: RtsParams::zero(),
        }
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(matches!(
            SpectrumCurve::new(vec![], vec![], prov()),
            Err(CurveError::EmptyGrid)
        ));
        assert!(matches!(
            SpectrumCurve::new(vec![0.0, 0.0], vec![1.0, 1.0], prov()),
            Err(CurveError::NotIncreasing { index: 1 })
        ));
        assert!(matches!(
            SpectrumCurve::new(vec![0.0, 1.0], vec![1.0, f64::NAN], prov()),
            Err(CurveError::NonFiniteIntensity { .. })
        ));
    }

    #[test]
    fn symmetric_grid_mirrors_exactly() {
        let g = symmetric_grid(5.0, 11);
        assert_eq!(g.len(), 11);
        assert_eq!(g[5], 0.0);
        for i in 0..11 {
            assert_eq!(g[i], -g[10 - i]);
        }
        validate_grid(&g).unwrap();
    }

    #[test]
    fn linspace_hits_endpoints() {
        let g = linspace(-2.0, 3.0, 6);
        assert_eq!(g[0], -2.0);
        assert_eq!(g[5], 3.0);
        validate_grid(&g).unwrap();
    }
}
