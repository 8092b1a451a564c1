//! Physical scenario parameters and per-velocity noise parameters.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which frequency sets the scale of the ω axis (and of every other
/// frequency-valued field).
///
/// `GammaUnits` matches figures plotted in units of γ, `RabiUnits` figures
/// plotted in units of Ω₀. The numerics are identical either way; the scale is
/// carried so that emitted files are self-describing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitScale {
    #[serde(rename = "gamma")]
    GammaUnits,
    #[serde(rename = "rabi")]
    RabiUnits,
}

/// All physical constants of one scenario, in reduced units.
///
/// The ω axis (and `detuning`) is measured from the driving laser frequency;
/// only the difference Δ = ω₀ − ω_L of the atomic and laser frequencies ever
/// enters. `thermal_c` is c = m/(k_B T) in 1/v₀² where v₀ = (frequency
/// unit)·r₀, so that the derived noise parameters are exactly a = k·v and
/// 1/τ_a = π·b·v with v in v₀ units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// Rabi frequency Ω₀ > 0.
    pub rabi_frequency: f64,
    /// Detuning Δ = ω₀ − ω_L.
    pub detuning: f64,
    /// γ = A/2, half the spontaneous emission rate; coherences decay at γ,
    /// populations at 2γ.
    pub gamma: f64,
    /// Emitted-photon wave number k ≥ 0, in 1/r₀. Zero selects the
    /// noise-free analytic limit.
    pub wave_number: f64,
    /// Collision density b = n_p·r₀² ≥ 0, in 1/r₀.
    pub collision_density: f64,
    /// Maxwell–Boltzmann parameter c = m/(k_B T) > 0, in 1/v₀².
    pub thermal_c: f64,
    /// Frequency unit convention for reporting.
    pub unit_scale: UnitScale,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ParamsError {
    #[error("{field} must be > 0, got {value}")]
    NotPositive { field: &'static str, value: f64 },
    #[error("{field} must be >= 0 and finite, got {value}")]
    Negative { field: &'static str, value: f64 },
}

impl PhysicalParams {
    pub fn new(
        rabi_frequency: f64,
        detuning: f64,
        gamma: f64,
        wave_number: f64,
        collision_density: f64,
        thermal_c: f64,
        unit_scale: UnitScale,
    ) -> Result<Self, ParamsError> {
        let params = Self {
            rabi_frequency,
            detuning,
            gamma,
            wave_number,
            collision_density,
            thermal_c,
            unit_scale,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), ParamsError> {
        for (field, value) in [
            ("rabi_frequency", self.rabi_frequency),
            ("gamma", self.gamma),
            ("thermal_c", self.thermal_c),
        ] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(ParamsError::NotPositive { field, value });
            }
        }
        for (field, value) in [
            ("wave_number", self.wave_number),
            ("collision_density", self.collision_density),
        ] {
            if !(value >= 0.0) || !value.is_finite() {
                return Err(ParamsError::Negative { field, value });
            }
        }
        if !self.detuning.is_finite() {
            return Err(ParamsError::Negative {
                field: "detuning",
                value: self.detuning,
            });
        }
        Ok(())
    }

    /// Noise parameters of a molecule moving at speed `v` (in v₀ units):
    /// amplitude a = k·v, switching rate 1/τ_a = π·b·v.
    pub fn rts_at_speed(&self, speed: f64) -> RtsParams {
        RtsParams {
            amplitude: self.wave_number * speed,
            switch_rate: std::f64::consts::PI * self.collision_density * speed,
            speed,
        }
    }
}

/// Per-velocity telegraph-noise parameters.
///
/// The noise is x(t) = ±a with sign flips at Poisson rate 1/τ_a, so its
/// autocorrelation is a²·exp(−2t/τ_a).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RtsParams {
    /// Doppler amplitude a = k·v ≥ 0.
    pub amplitude: f64,
    /// Switching rate 1/τ_a = π·b·v ≥ 0.
    pub switch_rate: f64,
    /// The molecule speed v ≥ 0 that generated both.
    pub speed: f64,
}

impl RtsParams {
    /// Noise parameters given directly, with `speed` kept as bookkeeping.
    pub fn raw(amplitude: f64, switch_rate: f64, speed: f64) -> Self {
        Self {
            amplitude,
            switch_rate,
            speed,
        }
    }

    /// The a = 0 noise-free limit.
    pub fn zero() -> Self {
        Self {
            amplitude: 0.0,
            switch_rate: 0.0,
            speed: 0.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rts_from_speed_is_exact() {
        let p = PhysicalParams::new(2.0, 0.0, 1.0, 0.01, 0.9, 1.6e-4, UnitScale::GammaUnits)
            .unwrap();
        let rts = p.rts_at_speed(5.0);
        assert_eq!(rts.amplitude, 0.01 * 5.0);
        assert_eq!(rts.switch_rate, std::f64::consts::PI * 0.9 * 5.0);
        assert_eq!(rts.speed, 5.0);
    }

    #[test]
    fn zero_amplitude_iff_zero_k_or_speed() {
        let p = PhysicalParams::new(2.0, 0.0, 1.0, 0.0, 0.9, 1.6e-4, UnitScale::GammaUnits)
            .unwrap();
        assert_eq!(p.rts_at_speed(7.0).amplitude, 0.0);
        let p2 = PhysicalParams::new(2.0, 0.0, 1.0, 0.3, 0.9, 1.6e-4, UnitScale::GammaUnits)
            .unwrap();
        assert_eq!(p2.rts_at_speed(0.0).amplitude, 0.0);
        assert!(p2.rts_at_speed(1.0).amplitude > 0.0);
    }

    #[test]
    fn rejects_nonpositive_scales() {
        assert!(PhysicalParams::new(0.0, 0.0, 1.0, 0.0, 0.0, 1.0, UnitScale::GammaUnits).is_err());
        assert!(PhysicalParams::new(1.0, 0.0, -1.0, 0.0, 0.0, 1.0, UnitScale::GammaUnits).is_err());
        assert!(PhysicalParams::new(1.0, 0.0, 1.0, -0.1, 0.0, 1.0, UnitScale::GammaUnits).is_err());
        assert!(PhysicalParams::new(1.0, 0.0, 1.0, 0.0, 0.0, 0.0, UnitScale::GammaUnits).is_err());
        assert!(PhysicalParams::new(1.0, f64::NAN, 1.0, 0.0, 0.0, 1.0, UnitScale::GammaUnits).is_err());
    }
}
