//! Curve file emission with a byte-stable format contract.

use std::io::Write;
use std::path::Path;

use thiserror::Error;

use mollow_rts::SpectrumCurve;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "csv" => Some(OutputFormat::Csv),
            "json" => Some(OutputFormat::Json),
            _ => None,
        }
    }
}

#[derive(Debug, Error)]
pub enum EmitError {
    #[error("io error writing {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("json encoding failed: {0}")]
    Json(#[from] serde_json::Error),
}

/// Decimal notation with 17 significant digits: the shortest fixed-point
/// string that round-trips every f64 and never switches to scientific
/// notation. Zero (of either sign) prints as "0".
pub fn format_sig17(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (16 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

/// CSV image of a curve: header `omega,intensity`, one row per point,
/// 17-significant-digit decimal notation, LF endings, no trailing
/// whitespace.
pub fn curve_to_csv(curve: &SpectrumCurve) -> String {
    let mut out = String::with_capacity(40 * (curve.len() + 1));
    out.push_str("omega,intensity\n");
    for (w, s) in curve.omega.iter().zip(&curve.intensity) {
        out.push_str(&format_sig17(*w));
        out.push(',');
        out.push_str(&format_sig17(*s));
        out.push('\n');
    }
    out
}

/// JSON image: the curve with its full provenance record, pretty-printed.
pub fn curve_to_json(curve: &SpectrumCurve) -> Result<String, EmitError> {
    let mut text = serde_json::to_string_pretty(curve)?;
    text.push('\n');
    Ok(text)
}

/// Write a curve to `path` in the requested format.
pub fn emit_curve(curve: &SpectrumCurve, path: &Path, format: OutputFormat) -> Result<(), EmitError> {
    let body = match format {
        OutputFormat::Csv => curve_to_csv(curve),
        OutputFormat::Json => curve_to_json(curve)?,
    };
    let write = || -> std::io::Result<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(body.as_bytes())?;
        f.flush()
    };
    write().map_err(|source| EmitError::Io { path: path.display().to_string(), source })
}

/// Parse a JSON curve file back (inverse of the JSON emission).
pub fn parse_json_curve(text: &str) -> Result<SpectrumCurve, EmitError> {
    Ok(serde_json::from_str(text)?)
}
