//! Resonance-fluorescence spectra of a strongly driven two-level atom whose
//! detuning is jittered by collisional random-telegraph noise.
//!
//! The crate has four layers:
//!
//! * [`spectrum`] — the closed-form fixed-velocity spectrum, assembled from
//!   the noise-dressed damping coefficients ([`spectrum::damping_coefficients`]).
//! * [`velocity`] — Maxwell–Boltzmann averaging of the fixed-velocity spectrum
//!   over molecular speeds, by deterministic quadrature.
//! * [`oracle`] — an independent Monte Carlo verification path: exact
//!   piecewise propagation of the optical Bloch equations along sampled
//!   telegraph paths, two-time correlations via quantum regression, and a
//!   Fourier transform back to a spectrum.
//! * [`analysis`] — peak finding, sideband separation, symmetry residuals and
//!   spectral moments, turning line shapes into testable numbers.
//!
//! All frequencies are in reduced units (the unit is γ or Ω₀ depending on
//! [`params::UnitScale`]); the ω axis is the offset from the driving laser
//! frequency (rotating-frame convention). Wave number and collision density
//! are in 1/r₀, speeds in (frequency unit)·r₀.

pub mod analysis;
pub mod curve;
pub mod oracle;
pub mod params;
pub mod quadrature;
pub mod reference;
pub mod spectrum;
pub mod velocity;

pub use curve::{Provenance, SpectrumCurve};
pub use params::{PhysicalParams, RtsParams, UnitScale};
pub use spectrum::{damping_coefficients, spectrum_at, spectrum_curve_fixed_v, GammaSet};
pub use velocity::{averaged_spectrum, averaged_spectrum_curve, maxwell_boltzmann_pdf, QuadratureSpec};
