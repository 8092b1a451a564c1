//! Run configuration: a TOML document with one `[[scenario]]` table per
//! curve. Unknown keys are hard errors; the full schema is documented in
//! `docs/config.md`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use mollow_rts::velocity::{QuadratureScheme, QuadratureSpec};
use mollow_rts::{PhysicalParams, UnitScale};

#[derive(Debug, Error)]
pub enum ConfigError {
    /// Malformed document; the message carries line/column from the parser.
    #[error("config parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid config: {key}: {reason}")]
    Validation { key: String, reason: String },
}

fn invalid(key: impl Into<String>, reason: impl Into<String>) -> ConfigError {
    ConfigError::Validation { key: key.into(), reason: reason.into() }
}

/// Top-level run configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Output directory; overridable from the command line.
    #[serde(default = "default_output_dir")]
    pub output_dir: String,
    /// Curve file format: "csv" or "json".
    #[serde(default = "default_format")]
    pub format: String,
    #[serde(default, rename = "scenario")]
    pub scenarios: Vec<Scenario>,
}

fn default_output_dir() -> String {
    "out".into()
}

fn default_format() -> String {
    "csv".into()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioMode {
    FixedV,
    Thermal,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfigScheme {
    GaussLegendre,
    AdaptiveSimpson,
}

/// Quadrature overrides; unset fields fall back to the defaults derived from
/// the scenario's thermal constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct QuadratureConfig {
    pub scheme: Option<ConfigScheme>,
    pub node_count: Option<usize>,
    pub truncation_speed: Option<f64>,
    pub rel_tolerance: Option<f64>,
}

/// Analysis toggles for the per-scenario report entry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    #[serde(default = "default_true")]
    pub peaks: bool,
    #[serde(default = "default_prominence")]
    pub min_prominence_fraction: f64,
    #[serde(default = "default_true")]
    pub symmetry: bool,
    #[serde(default = "default_true")]
    pub center_of_gravity: bool,
}

fn default_true() -> bool {
    true
}

fn default_prominence() -> f64 {
    mollow_rts::analysis::DEFAULT_PROMINENCE_FRACTION
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            peaks: true,
            min_prominence_fraction: default_prominence(),
            symmetry: true,
            center_of_gravity: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    /// Unique name; used as the output file stem.
    pub name: String,
    pub mode: ScenarioMode,
    pub rabi_frequency: f64,
    #[serde(default)]
    pub detuning: f64,
    pub gamma: f64,
    #[serde(default)]
    pub wave_number: f64,
    #[serde(default)]
    pub collision_density: f64,
    pub thermal_c: f64,
    #[serde(default = "default_unit_scale")]
    pub unit_scale: UnitScale,
    pub omega_min: f64,
    pub omega_max: f64,
    pub omega_count: usize,
    /// Molecule speed; required for `fixed_v` and `oracle` modes.
    pub speed: Option<f64>,
    /// Trajectory count; required for `oracle` mode.
    pub n_trajectories: Option<usize>,
    /// Monte Carlo seed; required for `oracle` mode.
    pub seed: Option<u64>,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
    #[serde(default)]
    pub analysis: AnalysisConfig,
}

fn default_unit_scale() -> UnitScale {
    UnitScale::GammaUnits
}

impl Scenario {
    pub fn physical_params(&self) -> Result<PhysicalParams, ConfigError> {
        PhysicalParams::new(
            self.rabi_frequency,
            self.detuning,
            self.gamma,
            self.wave_number,
            self.collision_density,
            self.thermal_c,
            self.unit_scale,
        )
        .map_err(|e| invalid(format!("scenario.{}", self.name), e.to_string()))
    }

    pub fn quadrature_spec(&self) -> Result<QuadratureSpec, ConfigError> {
        let defaults = QuadratureSpec::default_for(self.thermal_c);
        let spec = QuadratureSpec {
            scheme: match self.quadrature.scheme.unwrap_or(ConfigScheme::GaussLegendre) {
                ConfigScheme::GaussLegendre => QuadratureScheme::GaussLegendreTruncated,
                ConfigScheme::AdaptiveSimpson => QuadratureScheme::AdaptiveSimpson,
            },
            node_count: self.quadrature.node_count.unwrap_or(defaults.node_count),
            truncation_speed: self
                .quadrature
                .truncation_speed
                .unwrap_or(defaults.truncation_speed),
            rel_tolerance: self.quadrature.rel_tolerance.unwrap_or(defaults.rel_tolerance),
        };
        spec.validate()
            .map_err(|e| invalid(format!("scenario.{}.quadrature", self.name), e.to_string()))?;
        Ok(spec)
    }

    pub fn omega_grid(&self) -> Vec<f64> {
        mollow_rts::curve::linspace(self.omega_min, self.omega_max, self.omega_count)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        let key = |field: &str| format!("scenario.{}.{}", self.name, field);
        if self.name.is_empty() || !self.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
            return Err(invalid(
                "scenario.name",
                format!("'{}' must be a nonempty [A-Za-z0-9_-]+ file stem", self.name),
            ));
        }
        self.physical_params()?;
        if self.omega_count < 3 {
            return Err(invalid(key("omega_count"), "grid needs at least 3 points"));
        }
        if !(self.omega_min < self.omega_max) {
            return Err(invalid(key("omega_min"), "omega_min must be below omega_max"));
        }
        match self.mode {
            ScenarioMode::FixedV => {
                let v = self.speed.ok_or_else(|| invalid(key("speed"), "required for fixed_v mode"))?;
                if !(v >= 0.0) || !v.is_finite() {
                    return Err(invalid(key("speed"), format!("must be >= 0, got {v}")));
                }
            }
            ScenarioMode::Thermal => {
                self.quadrature_spec()?;
            }
            ScenarioMode::Oracle => {
                let v = self.speed.ok_or_else(|| invalid(key("speed"), "required for oracle mode"))?;
                if !(v >= 0.0) || !v.is_finite() {
                    return Err(invalid(key("speed"), format!("must be >= 0, got {v}")));
                }
                let n = self
                    .n_trajectories
                    .ok_or_else(|| invalid(key("n_trajectories"), "required for oracle mode"))?;
                if n == 0 {
                    return Err(invalid(key("n_trajectories"), "must be >= 1"));
                }
                self.seed
                    .ok_or_else(|| invalid(key("seed"), "required for oracle mode"))?;
            }
        }
        Ok(())
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.format != "csv" && self.format != "json" {
            return Err(invalid("format", format!("must be csv or json, got '{}'", self.format)));
        }
        let mut seen = std::collections::HashSet::new();
        for s in &self.scenarios {
            s.validate()?;
            if !seen.insert(s.name.clone()) {
                return Err(invalid("scenario.name", format!("duplicate scenario name '{}'", s.name)));
            }
        }
        Ok(())
    }
}

/// Parse and validate a TOML run configuration.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let config: RunConfig = toml::from_str(text)?;
    config.validate()?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
[[scenario]]
name = "basic"
mode = "fixed_v"
rabi_frequency = 2.0
gamma = 1.0
thermal_c = 1.6e-4
omega_min = -5.0
omega_max = 5.0
omega_count = 11
speed = 0.0
"#;

    #[test]
    fn minimal_document_fills_defaults() {
        let cfg = parse_config(MINIMAL).unwrap();
        assert_eq!(cfg.output_dir, "out");
        assert_eq!(cfg.format, "csv");
        assert_eq!(cfg.scenarios.len(), 1);
        let s = &cfg.scenarios[0];
        assert_eq!(s.detuning, 0.0);
        assert_eq!(s.unit_scale, UnitScale::GammaUnits);
        assert!(s.analysis.peaks);
    }

    #[test]
    fn negative_rabi_frequency_names_the_scenario() {
        let text = MINIMAL.replace("rabi_frequency = 2.0", "rabi_frequency = -1.0");
        let err = parse_config(&text).unwrap_err();
        match err {
            ConfigError::Validation { key, reason } => {
                assert!(key.contains("basic"), "key: {key}");
                assert!(reason.contains("rabi_frequency"), "reason: {reason}");
            }
            other => panic!("expected validation error, got {other}"),
        }
    }

    #[test]
    fn unknown_key_is_a_hard_error_with_location() {
        let text = format!("{MINIMAL}typo_key = 1\n");
        let err = parse_config(&text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("typo_key"), "{msg}");
        assert!(matches!(err, ConfigError::Parse(_)));
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let text = format!("{MINIMAL}{}", MINIMAL.replace("output_dir", ""));
        let err = parse_config(&text).unwrap_err();
        assert!(err.to_string().contains("duplicate"));
    }

    #[test]
    fn oracle_mode_requires_seed_and_trajectories() {
        let text = MINIMAL.replace("mode = \"fixed_v\"", "mode = \"oracle\"");
        let err = parse_config(&text).unwrap_err();
        assert!(err.to_string().contains("n_trajectories"));
    }

    #[test]
    fn round_trip_through_toml() {
        let cfg = parse_config(MINIMAL).unwrap();
        let text = toml::to_string_pretty(&cfg).unwrap();
        let back = parse_config(&text).unwrap();
        assert_eq!(cfg, back);
    }
}
