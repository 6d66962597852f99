//! Aperture simulator checked against an independent direct-summation
//! array factor written here from first principles.

use std::f64::consts::{PI, TAU};

mod common;

use common::{oracle_gain_x, oracle_peak, oracle_quantize};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ris_core::aperture::{
    directional_gain, peak_direction, quantization_loss, quantize_profile, radiation_pattern, squint_bandwidth_numeric,
    synthesize_profile, ThetaGrid,
};
use ris_core::{ApertureDesign, Frequency, PhaseProfile, PhaseResolution, SteeringTarget, SPEED_OF_LIGHT};

fn ka_design(bits: PhaseResolution) -> ApertureDesign {
    ApertureDesign::half_wave(Frequency::from_ghz(30.0).unwrap(), 30, bits).unwrap()
}

#[test]
fn closed_form_quantization_loss_matches_direct_summation() {
    let a = ka_design(PhaseResolution::Continuous);
    let (n, d) = (30, a.cell_spacing());
    let k0 = a.design_frequency().wavenumber();
    let s0 = 45f64.to_radians().sin();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for bits in 1..=3 {
        let mut ratio = 0.0;
        let trials = 48;
        for _ in 0..trials {
            let offset = rng.gen_range(0.0..TAU);
            let cont = move |x: f64| -k0 * s0 * x + offset;
            let quant = move |x: f64| oracle_quantize(-k0 * s0 * x + offset, bits);
            ratio += oracle_peak(n, d, &quant, k0, 45.0) / oracle_peak(n, d, &cont, k0, 45.0);
        }
        let numeric_db = -10.0 * (ratio / trials as f64).log10();
        let closed = quantization_loss(PhaseResolution::Bits(bits)).unwrap();
        assert!(
            (numeric_db - closed).abs() < 0.3,
            "{bits} bit: direct summation {numeric_db:.3} dB vs closed form {closed:.3} dB"
        );
    }
}

#[test]
fn library_pattern_agrees_with_oracle() {
    let a = ka_design(PhaseResolution::Continuous);
    let t = SteeringTarget::normal_to(45.0).unwrap();
    let cont = synthesize_profile(&a, &t).unwrap();
    let k0 = a.design_frequency().wavenumber();
    let s0 = 45f64.to_radians().sin();
    for bits in [1, 2, 3] {
        let q = quantize_profile(&cont, bits).unwrap();
        let oracle_phase = move |x: f64| oracle_quantize(-k0 * s0 * x, bits);
        for f_ghz in [28.0, 30.0, 31.5] {
            let f = Frequency::from_ghz(f_ghz).unwrap();
            for theta in [-45.0, -10.0, 0.0, 20.0, 44.0, 45.0, 60.0] {
                let lib = directional_gain(&a, &q, f, &t, theta, 0.0).unwrap();
                let ora = oracle_gain_x(30, a.cell_spacing(), &oracle_phase, f.wavenumber(), theta);
                assert!(
                    (lib - ora).abs() < 1e-9 * ora.max(1e-6),
                    "{bits} bit {f_ghz} GHz {theta} deg: {lib} vs {ora}"
                );
            }
        }
    }
}

#[test]
fn one_bit_mirror_lobe_is_suppressed_at_two_bits() {
    let a = ka_design(PhaseResolution::Continuous);
    let t = SteeringTarget::normal_to(45.0).unwrap();
    let cont = synthesize_profile(&a, &t).unwrap();
    let thetas = ThetaGrid::new(-80.0, 80.0, 1601).unwrap().values();
    let f = a.design_frequency();
    let level = |p: &PhaseProfile| {
        let pat = radiation_pattern(&a, p, f, &t, 0.0, &thetas).unwrap();
        (pat.gain_near(-45.0), pat.gain_near(45.0))
    };
    let (mirror1, main1) = level(&quantize_profile(&cont, 1).unwrap());
    let (mirror2, main2) = level(&quantize_profile(&cont, 2).unwrap());
    let (mirror_c, main_c) = level(&cont);
    assert!(mirror1 > main1 - 1.0, "1 bit mirror {mirror1} vs main {main1}");
    assert!(mirror2 < main2 - 15.0, "2 bit mirror {mirror2} vs main {main2}");
    assert!(mirror_c < main_c - 30.0);
}

#[test]
fn steered_directivity_at_sixty_degrees_shows_three_db_scan_loss() {
    let a = ka_design(PhaseResolution::Continuous);
    let f = a.design_frequency();
    let broadside = SteeringTarget::normal_to(0.0).unwrap();
    let steered = SteeringTarget::normal_to(60.0).unwrap();
    let thetas = ThetaGrid::new(-89.0, 89.0, 3561).unwrap().values();
    let peak = |t: &SteeringTarget| {
        let p = synthesize_profile(&a, t).unwrap();
        peak_direction(&radiation_pattern(&a, &p, f, t, 0.0, &thetas).unwrap()).unwrap()
    };
    let (b, s) = (peak(&broadside), peak(&steered));
    assert!((s.theta_deg - 60.0).abs() < 0.5, "{}", s.theta_deg);
    let drop = b.gain_db - s.gain_db;
    assert!((drop - 3.0).abs() <= 0.5, "scan loss {drop}");
}

#[test]
fn pattern_is_invariant_under_global_phase_offset() {
    let a = ka_design(PhaseResolution::Continuous);
    let t = SteeringTarget::normal_to(30.0).unwrap();
    let p = quantize_profile(&synthesize_profile(&a, &t).unwrap(), 2).unwrap();
    let thetas = ThetaGrid::new(-85.0, 85.0, 341).unwrap().values();
    let f = Frequency::from_ghz(29.0).unwrap();
    let base = radiation_pattern(&a, &p, f, &t, 0.0, &thetas).unwrap();
    let shifted = radiation_pattern(&a, &p.with_global_offset(2.2), f, &t, 0.0, &thetas).unwrap();
    for (x, y) in base.samples().iter().zip(shifted.samples()) {
        let (gx, gy) = (10f64.powf(x.gain_db / 10.0), 10f64.powf(y.gain_db / 10.0));
        assert!((gx - gy).abs() < 1e-9, "{} deg: {gx} vs {gy}", x.theta_deg);
    }
}

#[test]
fn pattern_does_not_depend_on_partitioning() {
    let a = ka_design(PhaseResolution::Continuous);
    let t = SteeringTarget::normal_to(20.0).unwrap();
    let p = synthesize_profile(&a, &t).unwrap();
    let thetas = ThetaGrid::new(-60.0, 60.0, 241).unwrap().values();
    let f = a.design_frequency();
    let whole = radiation_pattern(&a, &p, f, &t, 0.0, &thetas).unwrap();
    let mut pieces = Vec::new();
    for chunk in thetas.chunks(17).rev() {
        let part = radiation_pattern(&a, &p, f, &t, 0.0, chunk).unwrap();
        pieces.splice(0..0, part.samples().iter().copied());
    }
    assert_eq!(whole.samples(), pieces.as_slice());
}

#[test]
fn quantized_gain_never_exceeds_continuous_toward_design_direction() {
    let a = ka_design(PhaseResolution::Continuous);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let theta = rng.gen_range(0.0..80.0);
        let phi = rng.gen_range(0.0..360.0);
        let t = SteeringTarget::new(
            ris_core::Incidence::PlaneWave(ris_core::Direction::new(rng.gen_range(0.0..60.0), 0.0).unwrap()),
            ris_core::Direction::new(theta, phi).unwrap(),
        )
        .unwrap();
        let cont = synthesize_profile(&a, &t)
            .unwrap()
            .with_global_offset(rng.gen_range(0.0..TAU));
        let f = a.design_frequency();
        let g_cont = directional_gain(&a, &cont, f, &t, theta, phi).unwrap();
        for bits in 1..=4 {
            let q = quantize_profile(&cont, bits).unwrap();
            assert!(directional_gain(&a, &q, f, &t, theta, phi).unwrap() <= g_cont * (1.0 + 1e-12));
        }
    }
}

/// Half of the null-to-null main-lobe width in sinθ space.
fn half_beamwidth_sine(a: &ApertureDesign, f: Frequency) -> f64 {
    f.wavelength() / a.side()
}

#[test]
fn peak_follows_squint_law_across_ten_percent() {
    for resolution in [PhaseResolution::Continuous, PhaseResolution::Bits(1)] {
        let a = ka_design(resolution);
        let t = SteeringTarget::normal_to(45.0).unwrap();
        let mut p = synthesize_profile(&a, &t).unwrap();
        if let PhaseResolution::Bits(b) = resolution {
            p = quantize_profile(&p, b).unwrap();
        }
        // 1-bit patterns are mirror-symmetric; look on the design side only
        let thetas = ThetaGrid::new(0.0, 89.0, 891).unwrap().values();
        let f0 = a.design_frequency();
        for i in 0..=20 {
            let ratio = 0.9 + 0.01 * i as f64;
            let f = f0.scaled(ratio).unwrap();
            let peak = peak_direction(&radiation_pattern(&a, &p, f, &t, 0.0, &thetas).unwrap()).unwrap();
            let expected = 45f64.to_radians().sin() / ratio;
            let err = (peak.theta_deg.to_radians().sin() - expected).abs();
            assert!(
                err <= half_beamwidth_sine(&a, f),
                "{resolution} at {ratio:.2} f0: peak {:.3} deg, sine error {err:.4}",
                peak.theta_deg
            );
        }
    }
}

#[test]
fn fig4_design_peaks_at_45_and_squints_at_095() {
    let a = ka_design(PhaseResolution::Bits(1));
    let t = SteeringTarget::normal_to(45.0).unwrap();
    let p = quantize_profile(&synthesize_profile(&a, &t).unwrap(), 1).unwrap();
    // the cosθ projection pulls the maximum about 0.14 deg toward broadside,
    // so the grid is half a degree
    let step = 0.5;
    let thetas = ThetaGrid::new(0.0, 89.0, 179).unwrap().values();
    let f0 = a.design_frequency();
    let at_f0 = peak_direction(&radiation_pattern(&a, &p, f0, &t, 0.0, &thetas).unwrap()).unwrap();
    assert!((at_f0.theta_deg - 45.0).abs() <= step / 2.0, "{}", at_f0.theta_deg);

    let f = f0.scaled(0.95).unwrap();
    let low = peak_direction(&radiation_pattern(&a, &p, f, &t, 0.0, &thetas).unwrap()).unwrap();
    let expected = (45f64.to_radians().sin() / 0.95).asin().to_degrees();
    // half-power beamwidth at the squinted angle, in degrees
    let half_bw = (0.443 * f.wavelength() / (a.side() * expected.to_radians().cos())).to_degrees();
    assert!(
        (low.theta_deg - expected).abs() <= half_bw,
        "{} vs {expected}",
        low.theta_deg
    );
}

#[test]
fn squint_bandwidth_scales_inversely_with_panel_side() {
    let f0 = Frequency::from_ghz(140.0).unwrap();
    let t = SteeringTarget::normal_to(50.0).unwrap();
    let products: Vec<f64> = [24e-3, 50e-3, 118e-3]
        .iter()
        .map(|&side| {
            let a = ris_core::build_grid(side, f0).unwrap();
            squint_bandwidth_numeric(&a, &t, f0).unwrap().hz().unwrap() * a.side()
        })
        .collect();
    let mean = products.iter().sum::<f64>() / 3.0;
    for p in &products {
        assert!((p / mean - 1.0).abs() < 0.05, "{products:?}");
    }

    let small = ris_core::build_grid(50e-3, f0).unwrap();
    let large = ApertureDesign::half_wave(f0, 2 * small.cells_per_side(), PhaseResolution::Continuous).unwrap();
    let b1 = squint_bandwidth_numeric(&small, &t, f0).unwrap().hz().unwrap();
    let b2 = squint_bandwidth_numeric(&large, &t, f0).unwrap().hz().unwrap();
    assert!((b1 / b2 - 2.0).abs() < 0.04, "{b1} vs {b2}");
}

#[test]
fn squint_bandwidth_matches_uniform_aperture_theory() {
    // A uniformly excited line of length D loses 3 dB when
    // π·Δf·D·sinθ/c = 1.3916, giving B = 0.886·c/(D·sinθ).
    let f0 = Frequency::from_ghz(140.0).unwrap();
    let t = SteeringTarget::normal_to(50.0).unwrap();
    let a = ris_core::build_grid(118e-3, f0).unwrap();
    let b = squint_bandwidth_numeric(&a, &t, f0).unwrap().hz().unwrap();
    let theory = 2.0 * 1.391_557 * SPEED_OF_LIGHT / (PI * a.side() * 50f64.to_radians().sin());
    assert!((b / theory - 1.0).abs() < 0.01, "{b} vs {theory}");
}
