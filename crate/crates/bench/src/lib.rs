//! Fixtures shared by the benchmarks.

use ris_core::aperture::{quantize_profile, synthesize_profile, ThetaGrid};
use ris_core::{ApertureDesign, Frequency, PhaseProfile, PhaseResolution, ScenarioSpec, SteeringTarget};

/// 30×30 panel at 30 GHz with a 1-bit profile steered to 45°.
pub fn ka_panel() -> (ApertureDesign, PhaseProfile, SteeringTarget) {
    let f = Frequency::from_ghz(30.0).unwrap();
    let a = ApertureDesign::half_wave(f, 30, PhaseResolution::Bits(1)).unwrap();
    let t = SteeringTarget::normal_to(45.0).unwrap();
    let p = quantize_profile(&synthesize_profile(&a, &t).unwrap(), 1).unwrap();
    (a, p, t)
}

pub fn full_cut() -> Vec<f64> {
    ThetaGrid::new(-89.0, 89.0, 357).unwrap().values()
}

pub fn outdoor(theta_max_deg: f64) -> ScenarioSpec {
    ScenarioSpec::d_band("outdoor", 100.0, theta_max_deg).unwrap()
}

pub fn indoor(theta_max_deg: f64) -> ScenarioSpec {
    ScenarioSpec::d_band("indoor", 20.0, theta_max_deg).unwrap()
}
