//! Scenario execution: curves, analyses, files and the run report.

use std::path::{Path, PathBuf};

use thiserror::Error;

use mollow_rts::analysis::PeakReport;
use mollow_rts::oracle::oracle_spectrum;
use mollow_rts::velocity::averaged_spectrum_curve;
use mollow_rts::{spectrum_curve_fixed_v, SpectrumCurve};

use crate::config::{AnalysisConfig, RunConfig, Scenario, ScenarioMode};
use crate::emit::{emit_curve, EmitError, OutputFormat};
use crate::report::{sha256_hex, RunReport, ScenarioOutcome, ScenarioRecord};

/// Command-line overrides applied on top of the parsed configuration.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub output_dir: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    /// Overrides every oracle scenario's seed.
    pub seed: Option<u64>,
    /// Stop at the first scenario error instead of collecting them.
    pub fail_fast: bool,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("cannot create output directory {path}: {source}")]
    OutputDir {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write report {path}: {source}")]
    ReportWrite {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Emit(#[from] EmitError),
    #[error("scenario '{name}' failed: {message}")]
    FailFast { name: String, message: String },
}

fn compute_curve(scenario: &Scenario, seed_override: Option<u64>) -> Result<SpectrumCurve, String> {
    let params = scenario.physical_params().map_err(|e| e.to_string())?;
    let grid = scenario.omega_grid();
    match scenario.mode {
        ScenarioMode::FixedV => {
            let rts = params.rts_at_speed(scenario.speed.expect("validated"));
            spectrum_curve_fixed_v(&params, &rts, &grid).map_err(|e| e.to_string())
        }
        ScenarioMode::Thermal => {
            let quad = scenario.quadrature_spec().map_err(|e| e.to_string())?;
            averaged_spectrum_curve(&params, &grid, &quad).map_err(|e| e.to_string())
        }
        ScenarioMode::Oracle => {
            let rts = params.rts_at_speed(scenario.speed.expect("validated"));
            let n = scenario.n_trajectories.expect("validated");
            let seed = seed_override.unwrap_or_else(|| scenario.seed.expect("validated"));
            oracle_spectrum(&params, &rts, &grid, n, seed).map_err(|e| e.to_string())
        }
    }
}

fn analyze(curve: &SpectrumCurve, cfg: &AnalysisConfig) -> Option<PeakReport> {
    if !cfg.peaks && !cfg.symmetry && !cfg.center_of_gravity {
        return None;
    }
    let threshold = cfg.min_prominence_fraction * curve.max_abs_intensity();
    let mut report = PeakReport::analyze(curve, threshold).ok()?;
    if !cfg.peaks {
        report.peaks.clear();
        report.central_index = None;
        report.sideband_separation = None;
        report.sideband_weight_fraction = None;
    }
    if !cfg.symmetry {
        report.symmetry_residual = None;
    }
    if !cfg.center_of_gravity {
        report.center_of_gravity = None;
    }
    Some(report)
}

/// Execute every scenario, write one curve file each plus a `report.json`,
/// and return the report. Scenario failures are collected into the report
/// unless `fail_fast` is set; infrastructure failures (unwritable output)
/// abort.
pub fn run(config: &RunConfig, config_text: &str, options: &RunOptions) -> Result<RunReport, RunError> {
    let out_dir: PathBuf = options
        .output_dir
        .clone()
        .unwrap_or_else(|| PathBuf::from(&config.output_dir));
    std::fs::create_dir_all(&out_dir).map_err(|source| RunError::OutputDir {
        path: out_dir.display().to_string(),
        source,
    })?;
    let format = options
        .format
        .unwrap_or_else(|| OutputFormat::from_name(&config.format).expect("validated"));

    let mut records = Vec::with_capacity(config.scenarios.len());
    for scenario in &config.scenarios {
        let outcome = match compute_curve(scenario, options.seed) {
            Ok(curve) => {
                let file_name = format!("{}.{}", scenario.name, format.extension());
                let path = out_dir.join(&file_name);
                emit_curve(&curve, &path, format)?;
                let bytes = std::fs::read(&path).map_err(|source| RunError::ReportWrite {
                    path: path.display().to_string(),
                    source,
                })?;
                ScenarioOutcome::Ok {
                    curve_file: file_name,
                    curve_sha256: sha256_hex(&bytes),
                    analysis: analyze(&curve, &scenario.analysis),
                }
            }
            Err(message) => {
                if options.fail_fast {
                    return Err(RunError::FailFast { name: scenario.name.clone(), message });
                }
                ScenarioOutcome::Error { message }
            }
        };
        records.push(ScenarioRecord { name: scenario.name.clone(), outcome });
    }

    let report = RunReport {
        config_sha256: sha256_hex(config_text.as_bytes()),
        scenarios: records,
    };
    write_report(&report, &out_dir.join("report.json"))?;
    Ok(report)
}

fn write_report(report: &RunReport, path: &Path) -> Result<(), RunError> {
    let mut text = serde_json::to_string_pretty(report).map_err(EmitError::Json)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|source| RunError::ReportWrite {
        path: path.display().to_string(),
        source,
    })
}
