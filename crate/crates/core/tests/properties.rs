//! Property tests for the structural invariants of the line shape and the
//! curve containers.

use mollow_rts::analysis::find_peaks;
use mollow_rts::curve::{symmetric_grid, Provenance, SpectrumCurve};
use mollow_rts::{spectrum_at, PhysicalParams, RtsParams, UnitScale};
use proptest::prelude::*;

fn params(om: f64, de: f64, ga: f64) -> PhysicalParams {
    PhysicalParams::new(om, de, ga, 0.0, 0.0, 1.0, UnitScale::GammaUnits).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resonant_spectrum_is_even(
        om in 0.3f64..8.0,
        ga in 0.05f64..1.5,
        a in 0.0f64..2.0,
        rate in 0.05f64..20.0,
        w in 0.0f64..10.0,
    ) {
        let p = params(om, 0.0, ga);
        let rts = RtsParams::raw(a, rate, 1.0);
        let plus = spectrum_at(&p, &rts, w).unwrap();
        let minus = spectrum_at(&p, &rts, -w).unwrap();
        let scale = plus.abs().max(minus.abs()).max(1e-12);
        prop_assert!((plus - minus).abs() <= 1e-10 * scale);
    }

    #[test]
    fn detuning_mirror_property(
        om in 0.3f64..8.0,
        de in -3.0f64..3.0,
        ga in 0.05f64..1.5,
        a in 0.0f64..2.0,
        rate in 0.05f64..20.0,
        w in -10.0f64..10.0,
    ) {
        let rts = RtsParams::raw(a, rate, 1.0);
        let plus = spectrum_at(&params(om, de, ga), &rts, w).unwrap();
        let mirrored = spectrum_at(&params(om, -de, ga), &rts, -w).unwrap();
        let scale = plus.abs().max(mirrored.abs()).max(1e-12);
        prop_assert!((plus - mirrored).abs() <= 1e-10 * scale);
    }

    #[test]
    fn peak_set_invariant_under_positive_scaling(
        scale in 0.01f64..100.0,
        heights in proptest::collection::vec(0.0f64..1.0, 16),
    ) {
        let grid = symmetric_grid(4.0, 16 * 2 + 1);
        let mut intensity: Vec<f64> = heights.iter().chain(heights.iter().rev()).cloned().collect();
        intensity.push(heights[0]);
        let prov = Provenance::FixedV { params: params(1.0, 0.0, 1.0), rts: RtsParams::zero() };
        let base = SpectrumCurve::new(grid.clone(), intensity.clone(), prov.clone()).unwrap();
        let scaled = SpectrumCurve::new(
            grid,
            intensity.iter().map(|s| s * scale).collect(),
            prov,
        ).unwrap();
        let thr = 0.01 * base.max_abs_intensity();
        let p1 = find_peaks(&base, thr).unwrap();
        let p2 = find_peaks(&scaled, thr * scale).unwrap();
        prop_assert_eq!(p1.len(), p2.len());
        for (a, b) in p1.iter().zip(&p2) {
            prop_assert_eq!(a.omega, b.omega);
        }
    }

    #[test]
    fn curve_json_round_trip(
        values in proptest::collection::vec(-1.0e3f64..1.0e3, 3..24),
    ) {
        let n = values.len();
        let grid: Vec<f64> = (0..n).map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64).collect();
        let prov = Provenance::FixedV { params: params(2.0, 0.5, 0.3), rts: RtsParams::raw(0.1, 0.2, 0.3) };
        let curve = SpectrumCurve::new(grid, values, prov).unwrap();
        let text = serde_json::to_string(&curve).unwrap();
        let back: SpectrumCurve = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(curve, back);
    }
}
