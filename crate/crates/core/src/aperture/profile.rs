use std::f64::consts::{PI, TAU};

use super::{ApertureDesign, PhaseResolution, SteeringTarget};
use crate::error::{Error, Result};

/// Per-cell reflection phases in [0, 2π), row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseProfile {
    cells_per_side: usize,
    phases: Vec<f64>,
    resolution: PhaseResolution,
}

impl PhaseProfile {
    /// Build a profile from raw phases; values are wrapped into [0, 2π).
    pub fn from_phases(cells_per_side: usize, phases: Vec<f64>) -> Result<Self> {
        if cells_per_side == 0 || phases.len() != cells_per_side * cells_per_side {
            return Err(Error::invalid(
                "phase profile",
                format!(
                    "{} phases do not fill a {}x{} grid",
                    phases.len(),
                    cells_per_side,
                    cells_per_side
                ),
            ));
        }
        if phases.iter().any(|p| !p.is_finite()) {
            return Err(Error::invalid("phase profile", "phases must be finite"));
        }
        Ok(PhaseProfile {
            cells_per_side,
            phases: phases.into_iter().map(wrap_phase).collect(),
            resolution: PhaseResolution::Continuous,
        })
    }

    pub fn uniform(cells_per_side: usize, phase: f64) -> Result<Self> {
        Self::from_phases(cells_per_side, vec![phase; cells_per_side * cells_per_side])
    }

    pub fn cells_per_side(&self) -> usize {
        self.cells_per_side
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn phase(&self, row: usize, col: usize) -> f64 {
        self.phases[row * self.cells_per_side + col]
    }

    pub fn resolution(&self) -> PhaseResolution {
        self.resolution
    }

    /// Adds a constant to every phase. The result is tagged continuous.
    pub fn with_global_offset(&self, offset: f64) -> PhaseProfile {
        PhaseProfile {
            cells_per_side: self.cells_per_side,
            phases: self.phases.iter().map(|p| wrap_phase(p + offset)).collect(),
            resolution: PhaseResolution::Continuous,
        }
    }
}

pub(crate) fn wrap_phase(x: f64) -> f64 {
    let w = x.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Continuous profile that turns the target's illumination into a plane
/// wave leaving along the target's outgoing direction at the design
/// frequency: φ(r) = k0·(path(r) − u_out·r) mod 2π.
pub fn synthesize_profile(aperture: &ApertureDesign, target: &SteeringTarget) -> Result<PhaseProfile> {
    target.validate()?;
    let k0 = aperture.design_frequency().wavenumber();
    let [ux, uy, _] = target.outgoing.unit_vector();
    let phases = aperture
        .cell_centers()
        .into_iter()
        .map(|r| {
            let (path, _) = target.incident.path_and_cosine(r);
            wrap_phase(k0 * (path - ux * r[0] - uy * r[1]))
        })
        .collect();
    Ok(PhaseProfile {
        cells_per_side: aperture.cells_per_side(),
        phases,
        resolution: PhaseResolution::Continuous,
    })
}

/// Snap every phase to the nearest of 2πk/2^bits using wrap-around
/// distance. Exact ties go to the smaller state index.
pub fn quantize_profile(profile: &PhaseProfile, bits: u32) -> Result<PhaseProfile> {
    let target = PhaseResolution::bits(bits)?;
    if !profile.resolution.is_finer_or_equal(target) {
        return Err(Error::invalid(
            "phase_bits",
            format!("cannot requantize a {} profile to {bits} bits", profile.resolution),
        ));
    }
    let states = 1u64 << bits.min(62);
    let step = TAU / states as f64;
    let phases = profile
        .phases
        .iter()
        .map(|&phi| {
            let x = phi / step;
            let lower = x.floor();
            let frac = x - lower;
            let lower = lower as u64 % states;
            let index = if frac > 0.5 {
                (lower + 1) % states
            } else if frac == 0.5 && lower == states - 1 {
                // equidistant from the top state and state 0
                0
            } else {
                lower
            };
            index as f64 * step
        })
        .collect();
    Ok(PhaseProfile {
        cells_per_side: profile.cells_per_side,
        phases,
        resolution: target,
    })
}

/// Mean directivity loss of b-bit phase quantization, −20·log10(sinc(π/2^b)) dB.
pub fn quantization_loss(resolution: PhaseResolution) -> Result<f64> {
    resolution.validate()?;
    match resolution {
        PhaseResolution::Continuous => Ok(0.0),
        PhaseResolution::Bits(b) => {
            let x = PI / 2f64.powi(b.min(1000) as i32);
            let sinc = if x < 1e-8 { 1.0 } else { x.sin() / x };
            Ok(-20.0 * sinc.log10())
        }
    }
}
