//! Monte Carlo verification path for the closed-form spectrum.
//!
//! The model: a two-level atom driven at Rabi frequency Ω₀, detuned by Δ,
//! with coherence decay γ and population decay 2γ, while collisions shift the
//! detuning by a telegraph x(t) = ±a. Everything is propagated exactly
//! (matrix exponentials per constant-noise segment), so the only errors are
//! statistical and the τ discretization of the final Fourier transform.
//!
//! See [`bloch`] for the rotating-frame equations, [`rts`] for path sampling
//! and [`correlation`] for the regression construction, the reproducibility
//! contract (per-trajectory seed = seed XOR index, fixed-chunk reduction) and
//! the telegraph rate convention shared with the closed form.

pub mod bloch;
pub mod correlation;
pub mod rts;

pub use bloch::{bloch_generator, propagate_bloch, BlochState, OracleError};
pub use correlation::{
    correlation_function, correlation_function_with, oracle_spectrum, oracle_spectrum_with,
    CorrelationEstimate, OracleSettings,
};
pub use rts::{sample_rts_path, RtsPath};
