//! Zero-noise reduction: the closed form at a = 0, Δ = 0 must reproduce the
//! resonant fluorescence triplet derived independently in partial-fraction
//! form, and carry the textbook 3:1 peak ratio in the strong-drive limit.

use mollow_rts::curve::linspace;
use mollow_rts::reference::resonant_mollow_spectrum;
use mollow_rts::{spectrum_at, PhysicalParams, RtsParams, UnitScale};

fn params(om: f64, ga: f64) -> PhysicalParams {
    PhysicalParams::new(om, 0.0, ga, 0.0, 0.0, 1.0, UnitScale::GammaUnits).unwrap()
}

#[test]
fn matches_three_lorentzian_oracle_pointwise() {
    let p = params(10.0, 1.0);
    let rts = RtsParams::zero();
    for &w in &linspace(-20.0, 20.0, 2001) {
        let got = spectrum_at(&p, &rts, w).unwrap();
        let want = resonant_mollow_spectrum(10.0, 1.0, w);
        if want.abs() > 1e-12 {
            let rel = ((got - want) / want).abs();
            assert!(rel <= 1e-9, "w = {w}: rel = {rel:.3e}");
        }
    }
}

#[test]
fn oracle_agreement_across_drives() {
    for om in [0.8, 2.0, 5.0, 25.0] {
        let p = params(om, 1.0);
        for &w in &linspace(-3.0 * om, 3.0 * om, 301) {
            let got = spectrum_at(&p, &RtsParams::zero(), w).unwrap();
            let want = resonant_mollow_spectrum(om, 1.0, w);
            assert!(
                (got - want).abs() <= 1e-9 * want.abs().max(1e-12),
                "Om = {om}, w = {w}"
            );
        }
    }
}

#[test]
fn central_to_sideband_ratio_approaches_three() {
    // ratio S(0)/S(Ω₀) tends to 3 from below as Ω₀/γ grows
    let mut prev_dev = f64::INFINITY;
    for ratio in [10.0, 20.0, 50.0] {
        let p = params(ratio, 1.0);
        let s0 = spectrum_at(&p, &RtsParams::zero(), 0.0).unwrap();
        let ss = spectrum_at(&p, &RtsParams::zero(), ratio).unwrap();
        let dev = (s0 / ss - 3.0).abs() / 3.0;
        assert!(dev < prev_dev, "deviation must shrink with Ω₀/γ");
        prev_dev = dev;
    }
    assert!(prev_dev < 0.05, "at Ω₀ = 50γ the ratio is within 5% of 3");
}
