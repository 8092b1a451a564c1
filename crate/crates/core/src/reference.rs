//! Independently derived closed forms used to verify the main code paths.
//!
//! Everything here is obtained by a different algebraic route than the code
//! it checks (partial fractions, stationary-point algebra, elementary
//! probability), and deliberately shares no arithmetic with the modules under
//! test.

/// Exact resonant (Δ = 0, a = 0) fluorescence triplet as an explicit
/// three-Lorentzian partial-fraction form.
///
/// The noise-free resolvent has poles at −γ and −3γ/2 ± iμ with
/// μ = √(Ω₀² − γ²/4); computing the residues by hand gives a central
/// Lorentzian of half-width γ plus two sidebands of half-width 3γ/2 at ±μ
/// with small dispersive admixtures:
///
/// S(ω) = γ/(γ² + ω²)
///      + [3γ/4 − (γ/4μ)(ω − μ)] / ((3γ/2)² + (ω − μ)²)
///      + [3γ/4 + (γ/4μ)(ω + μ)] / ((3γ/2)² + (ω + μ)²)
///
/// Valid for Ω₀ > γ/2 (underdamped sidebands). The peak-height ratio of the
/// central line to a sideband approaches 3:1 as Ω₀/γ → ∞.
pub fn resonant_mollow_spectrum(rabi_frequency: f64, gamma: f64, omega: f64) -> f64 {
    assert!(
        rabi_frequency > 0.5 * gamma,
        "three-Lorentzian form needs underdamped sidebands"
    );
    let mu = (rabi_frequency * rabi_frequency - 0.25 * gamma * gamma).sqrt();
    let wc = 1.5 * gamma;
    let central = gamma / (gamma * gamma + omega * omega);
    let disp = gamma / (4.0 * mu);
    let left = (0.75 * gamma + disp * (omega + mu)) / (wc * wc + (omega + mu) * (omega + mu));
    let right = (0.75 * gamma - disp * (omega - mu)) / (wc * wc + (omega - mu) * (omega - mu));
    central + left + right
}

/// Telegraph-noise autocorrelation: E[x(t) x(t+τ)] for x = ±a flipping at
/// Poisson rate λ is a²·e^{−2λτ} (the flip count over τ is Poisson(λτ), and
/// E[(−1)^n] = e^{−2λτ}).
pub fn rts_autocorrelation(amplitude: f64, flip_rate: f64, tau: f64) -> f64 {
    amplitude * amplitude * (-2.0 * flip_rate * tau).exp()
}

/// Stationary excited-state population of the noise-free atom at detuning δ:
/// ρ_ee = (Ω₀²/4) / (γ² + δ² + Ω₀²/2).
pub fn steady_excited_population(rabi_frequency: f64, gamma: f64, delta: f64) -> f64 {
    let om2 = rabi_frequency * rabi_frequency;
    0.25 * om2 / (gamma * gamma + delta * delta + om2 / 2.0)
}

/// Stationary coherence ρ_eg = i(Ω₀/2)·w_ss/(γ + iδ) of the noise-free atom,
/// returned as (re, im); w_ss = 2ρ_ee − 1 is the stationary inversion.
pub fn steady_coherence(rabi_frequency: f64, gamma: f64, delta: f64) -> (f64, f64) {
    let w = 2.0 * steady_excited_population(rabi_frequency, gamma, delta) - 1.0;
    // i(Ω/2)w/(γ+iδ) = (Ω w/2)·(i(γ−iδ))/(γ²+δ²) = (Ω w/2)(δ + iγ)/(γ²+δ²)
    let scale = 0.5 * rabi_frequency * w / (gamma * gamma + delta * delta);
    (scale * delta, scale * gamma)
}

/// Excited population of the resonantly driven atom starting from the ground
/// state (Torrey's damped Rabi solution for coherence decay γ, population
/// decay 2γ):
///
/// ρ_ee(t) = ρ_ee^ss · [1 − e^{−3γt/2}(cos μt + (3γ/2μ) sin μt)],
/// μ = √(Ω₀² − γ²/4).
///
/// Valid for Ω₀ > γ/2.
pub fn resonant_rabi_excited_population(rabi_frequency: f64, gamma: f64, t: f64) -> f64 {
    assert!(rabi_frequency > 0.5 * gamma);
    let mu = (rabi_frequency * rabi_frequency - 0.25 * gamma * gamma).sqrt();
    let ss = steady_excited_population(rabi_frequency, gamma, 0.0);
    ss * (1.0 - (-1.5 * gamma * t).exp() * ((mu * t).cos() + 1.5 * gamma / mu * (mu * t).sin()))
}
