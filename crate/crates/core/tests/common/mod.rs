//! Independent reference computations shared by the integration tests.

#![allow(dead_code)]

use std::f64::consts::TAU;

/// Normalized power toward θ (φ = 0) of an n×n, spacing-d panel under normal
/// incidence whose phase depends only on the column coordinate x.
pub fn oracle_gain_x(n: usize, d: f64, phase_of_x: &dyn Fn(f64) -> f64, k: f64, theta_deg: f64) -> f64 {
    let s = theta_deg.to_radians().sin();
    let (mut re, mut im) = (0.0, 0.0);
    for col in 0..n {
        let x = (col as f64 - (n as f64 - 1.0) / 2.0) * d;
        let psi = phase_of_x(x) + k * s * x;
        re += psi.cos();
        im += psi.sin();
    }
    // every row contributes the same column sum
    (re * re + im * im) / (n * n) as f64 * theta_deg.to_radians().cos()
}

pub fn oracle_quantize(phi: f64, bits: u32) -> f64 {
    let step = TAU / (1u32 << bits) as f64;
    let idx = (phi.rem_euclid(TAU) / step).round();
    (idx * step).rem_euclid(TAU)
}

pub fn oracle_peak(n: usize, d: f64, phase_of_x: &dyn Fn(f64) -> f64, k: f64, around_deg: f64) -> f64 {
    (0..=400)
        .map(|i| around_deg - 2.0 + i as f64 * 0.01)
        .map(|t| oracle_gain_x(n, d, phase_of_x, k, t))
        .fold(0.0, f64::max)
}

/// Bi-static radar equation for a square flat panel of side `side_m`
/// steering to `theta_deg`, written out term by term in linear units.
#[allow(clippy::too_many_arguments)]
pub fn oracle_received_power_dbm(
    pt_dbm: f64,
    gain_db: f64,
    f_hz: f64,
    d1: f64,
    d2: f64,
    side_m: f64,
    efficiency: f64,
    theta_deg: f64,
) -> f64 {
    let lambda = 299_792_458.0 / f_hz;
    let area = side_m * side_m;
    let sigma =
        4.0 * std::f64::consts::PI * area * area / (lambda * lambda) * efficiency * theta_deg.to_radians().cos();
    let pt_w = 1e-3 * 10f64.powf(pt_dbm / 10.0);
    let g = 10f64.powf(gain_db / 10.0);
    let four_pi = 4.0 * std::f64::consts::PI;
    let pr_w = pt_w * g * lambda * lambda * sigma / (four_pi.powi(3) * d1 * d1 * d2 * d2);
    10.0 * (pr_w * 1e3).log10()
}
