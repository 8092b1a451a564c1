//! Configuration parsing, batch execution and file emission for the
//! collision-noise fluorescence calculator.
//!
//! The binary front-end lives in `main.rs`; everything testable is here.

pub mod config;
pub mod emit;
pub mod presets;
pub mod report;
pub mod runner;

pub use config::{parse_config, ConfigError, RunConfig, Scenario, ScenarioMode};
pub use emit::{emit_curve, format_sig17, OutputFormat};
pub use report::{RunReport, ScenarioOutcome, ScenarioRecord};
pub use runner::{run, RunOptions};
