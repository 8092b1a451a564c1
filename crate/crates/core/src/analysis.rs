//! Spectral structure quantifiers: peaks, sideband separation, symmetry and
//! spectral moments.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{Provenance, SpectrumCurve};

/// Fraction of the curve maximum used as the default prominence threshold.
pub const DEFAULT_PROMINENCE_FRACTION: f64 = 0.01;

/// One detected local maximum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    pub omega: f64,
    pub height: f64,
    /// Height above the higher of the two flanking minima.
    pub prominence: f64,
}

/// Derived structure of one curve. Fields that need a specific grid or peak
/// topology are `None` when not computable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeakReport {
    /// Strict local maxima, sorted by ω (plateaus count once, at their
    /// leftmost sample).
    pub peaks: Vec<Peak>,
    /// Index into `peaks` of the peak nearest ω = 0.
    pub central_index: Option<usize>,
    /// Mean |ω_side − ω_central| for a clean triplet.
    pub sideband_separation: Option<f64>,
    /// max |S(ω) − S(−ω)| / max|S| on a symmetric grid.
    pub symmetry_residual: Option<f64>,
    /// First moment ∫ω·S dω / ∫S dω (trapezoidal).
    pub center_of_gravity: Option<f64>,
    /// Share of the three peak-window masses carried by the sidebands.
    pub sideband_weight_fraction: Option<f64>,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum AnalysisError {
    #[error("curve too short for peak analysis: {len} points")]
    CurveTooShort { len: usize },
    #[error("prominence threshold must be >= 0, got {value}")]
    BadThreshold { value: f64 },
    #[error("not a triplet: {reason}")]
    NotATriplet { reason: String },
    #[error("omega grid is not symmetric about 0 (index {index}: {left} vs {right})")]
    AsymmetricGrid { index: usize, left: f64, right: f64 },
    #[error("curve mass is not positive: integral = {mass}")]
    NonPositiveMass { mass: f64 },
}

/// Strict local maxima with prominence ≥ `min_prominence`.
///
/// Prominence is the height above the higher of the two flanking minima,
/// where each flank extends until a sample above the peak (or the curve edge)
/// is reached. Plateau ties resolve to the leftmost sample of the plateau.
pub fn find_peaks(curve: &SpectrumCurve, min_prominence: f64) -> Result<Vec<Peak>, AnalysisError> {
    if curve.len() < 3 {
        return Err(AnalysisError::CurveTooShort { len: curve.len() });
    }
    if !(min_prominence >= 0.0) {
        return Err(AnalysisError::BadThreshold { value: min_prominence });
    }
    let s = &curve.intensity;
    let n = s.len();
    let mut peaks = Vec::new();
    let mut i = 1;
    while i < n - 1 {
        if s[i] > s[i - 1] {
            // leftmost sample of a potential plateau
            let mut j = i;
            while j + 1 < n && s[j + 1] == s[i] {
                j += 1;
            }
            if j < n - 1 && s[j + 1] < s[i] {
                let prominence = prominence_at(s, i);
                if prominence >= min_prominence {
                    peaks.push(Peak { omega: curve.omega[i], height: s[i], prominence });
                }
                i = j + 1;
                continue;
            }
            i = j + 1;
            continue;
        }
        i += 1;
    }
    Ok(peaks)
}

fn prominence_at(s: &[f64], peak: usize) -> f64 {
    let h = s[peak];
    let mut left_min = h;
    let mut i = peak;
    while i > 0 {
        i -= 1;
        if s[i] > h {
            break;
        }
        left_min = left_min.min(s[i]);
    }
    let mut right_min = h;
    let mut i = peak;
    while i + 1 < s.len() {
        i += 1;
        if s[i] > h {
            break;
        }
        right_min = right_min.min(s[i]);
    }
    h - left_min.max(right_min)
}

/// Mean distance of the two sidebands from the central peak of a triplet.
pub fn sideband_separation(report: &PeakReport) -> Result<f64, AnalysisError> {
    if report.peaks.len() != 3 {
        return Err(AnalysisError::NotATriplet {
            reason: format!("{} peaks", report.peaks.len()),
        });
    }
    if report.central_index != Some(1) {
        return Err(AnalysisError::NotATriplet {
            reason: "central peak is not the middle one".into(),
        });
    }
    let c = report.peaks[1].omega;
    Ok(0.5 * ((report.peaks[0].omega - c).abs() + (report.peaks[2].omega - c).abs()))
}

/// max |S(ω) − S(−ω)| / max|S| on a grid symmetric about 0.
pub fn symmetry_residual(curve: &SpectrumCurve) -> Result<f64, AnalysisError> {
    let n = curve.len();
    let span = curve
        .omega
        .iter()
        .fold(0.0f64, |m, w| m.max(w.abs()));
    let tol = 1e-12 * span.max(f64::MIN_POSITIVE);
    for i in 0..n / 2 {
        let left = curve.omega[i];
        let right = curve.omega[n - 1 - i];
        if (left + right).abs() > tol {
            return Err(AnalysisError::AsymmetricGrid { index: i, left, right });
        }
    }
    if n % 2 == 1 && curve.omega[n / 2].abs() > tol {
        return Err(AnalysisError::AsymmetricGrid {
            index: n / 2,
            left: curve.omega[n / 2],
            right: curve.omega[n / 2],
        });
    }
    let max = curve.max_abs_intensity().max(f64::MIN_POSITIVE);
    let mut residual = 0.0f64;
    for i in 0..n {
        residual = residual.max((curve.intensity[i] - curve.intensity[n - 1 - i]).abs());
    }
    Ok(residual / max)
}

fn trapezoid(omega: &[f64], values: impl Fn(usize) -> f64) -> f64 {
    let mut acc = 0.0;
    for i in 1..omega.len() {
        acc += 0.5 * (omega[i] - omega[i - 1]) * (values(i) + values(i - 1));
    }
    acc
}

/// First moment ∫ω·S dω / ∫S dω of the curve (trapezoidal).
pub fn center_of_gravity(curve: &SpectrumCurve) -> Result<f64, AnalysisError> {
    let mass = trapezoid(&curve.omega, |i| curve.intensity[i]);
    if !(mass > 0.0) {
        return Err(AnalysisError::NonPositiveMass { mass });
    }
    let first = trapezoid(&curve.omega, |i| curve.omega[i] * curve.intensity[i]);
    Ok(first / mass)
}

/// Share of the triplet mass carried by the sidebands: the curve is
/// integrated over a window of half-width `half_width` around each of the
/// three peaks, and the two sideband masses are divided by the total of the
/// three. Windows are clipped to the grid.
pub fn sideband_weight_fraction(
    curve: &SpectrumCurve,
    report: &PeakReport,
    half_width: f64,
) -> Result<f64, AnalysisError> {
    if report.peaks.len() != 3 || report.central_index != Some(1) {
        return Err(AnalysisError::NotATriplet {
            reason: format!("{} peaks", report.peaks.len()),
        });
    }
    let window_mass = |center: f64| -> f64 {
        let lo = center - half_width;
        let hi = center + half_width;
        let mut acc = 0.0;
        for i in 1..curve.len() {
            let (w0, w1) = (curve.omega[i - 1], curve.omega[i]);
            if w1 < lo || w0 > hi {
                continue;
            }
            // clip the segment to the window
            let a = w0.max(lo);
            let b = w1.min(hi);
            if b <= a {
                continue;
            }
            let f = |w: f64| {
                let t = (w - w0) / (w1 - w0);
                curve.intensity[i - 1] * (1.0 - t) + curve.intensity[i] * t
            };
            acc += 0.5 * (b - a) * (f(a) + f(b));
        }
        acc
    };
    let m_left = window_mass(report.peaks[0].omega);
    let m_center = window_mass(report.peaks[1].omega);
    let m_right = window_mass(report.peaks[2].omega);
    let total = m_left + m_center + m_right;
    if !(total > 0.0) {
        return Err(AnalysisError::NonPositiveMass { mass: total });
    }
    Ok((m_left + m_right) / total)
}

/// Half-width for the sideband windows: max(γ, 0.2·separation), with γ taken
/// from the curve provenance.
pub fn sideband_window_half_width(curve: &SpectrumCurve, separation: f64) -> f64 {
    let gamma = match &curve.provenance {
        Provenance::FixedV { params, .. }
        | Provenance::Thermal { params, .. }
        | Provenance::MonteCarlo { params, .. } => params.gamma,
    };
    gamma.max(0.2 * separation)
}

impl PeakReport {
    /// Run every analysis that applies to the curve, with an absolute
    /// prominence threshold.
    pub fn analyze(curve: &SpectrumCurve, min_prominence: f64) -> Result<Self, AnalysisError> {
        let peaks = find_peaks(curve, min_prominence)?;
        let central_index = if peaks.is_empty() {
            None
        } else {
            let mut best = 0;
            for (i, p) in peaks.iter().enumerate() {
                if p.omega.abs() < peaks[best].omega.abs() {
                    best = i;
                }
            }
            Some(best)
        };
        let mut report = PeakReport {
            peaks,
            central_index,
            sideband_separation: None,
            symmetry_residual: symmetry_residual(curve).ok(),
            center_of_gravity: center_of_gravity(curve).ok(),
            sideband_weight_fraction: None,
        };
        if let Ok(sep) = sideband_separation(&report) {
            report.sideband_separation = Some(sep);
            let hw = sideband_window_half_width(curve, sep);
            report.sideband_weight_fraction = sideband_weight_fraction(curve, &report, hw).ok();
        }
        Ok(report)
    }

    /// [`Self::analyze`] with the default threshold (1% of the curve
    /// maximum).
    pub fn analyze_default(curve: &SpectrumCurve) -> Result<Self, AnalysisError> {
        PeakReport::analyze(curve, DEFAULT_PROMINENCE_FRACTION * curve.max_abs_intensity())
    }
}
