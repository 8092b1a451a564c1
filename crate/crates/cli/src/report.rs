//! Machine-readable run reports.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use mollow_rts::analysis::PeakReport;

/// One scenario's outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ScenarioOutcome {
    Ok {
        curve_file: String,
        /// SHA-256 of the emitted curve file, hex.
        curve_sha256: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        analysis: Option<PeakReport>,
    },
    Error { message: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioRecord {
    pub name: String,
    #[serde(flatten)]
    pub outcome: ScenarioOutcome,
}

/// The single JSON document written per run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    /// SHA-256 of the configuration this run executed, hex.
    pub config_sha256: String,
    pub scenarios: Vec<ScenarioRecord>,
}

impl RunReport {
    pub fn has_errors(&self) -> bool {
        self.scenarios
            .iter()
            .any(|s| matches!(s.outcome, ScenarioOutcome::Error { .. }))
    }
}

/// Hex SHA-256 of arbitrary bytes.
pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sha256_of_empty_input() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn report_round_trips_through_json() {
        let report = RunReport {
            config_sha256: sha256_hex(b"demo"),
            scenarios: vec![
                ScenarioRecord {
                    name: "a".into(),
                    outcome: ScenarioOutcome::Ok {
                        curve_file: "a.csv".into(),
                        curve_sha256: sha256_hex(b"curve"),
                        analysis: None,
                    },
                },
                ScenarioRecord {
                    name: "b".into(),
                    outcome: ScenarioOutcome::Error { message: "boom".into() },
                },
            ],
        };
        let text = serde_json::to_string_pretty(&report).unwrap();
        let back: RunReport = serde_json::from_str(&text).unwrap();
        assert_eq!(report, back);
        assert!(report.has_errors());
    }
}
