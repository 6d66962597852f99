//! Beam-squint bandwidth: with phases frozen at the design frequency, the
//! gain toward the design direction falls off as frequency moves away.

use super::pattern::directional_gain;
use super::{quantize_profile, synthesize_profile, ApertureDesign, Incidence, PhaseResolution, SteeringTarget};
use crate::error::{Error, Result};
use crate::units::{Frequency, SPEED_OF_LIGHT};

/// Bisection stops once the 3 dB crossing is bracketed this tightly.
pub const SQUINT_RESOLUTION_HZ: f64 = 1e6;

/// The 3 dB crossings are searched for within ±this fraction of f0.
pub const SQUINT_SEARCH_SPAN: f64 = 0.5;

/// Beamwidth constant of the closed-form squint model.
pub const DEFAULT_SQUINT_BETA: f64 = 1.13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SquintBandwidth {
    /// Steering toward the specular direction: no squint, no bound.
    Unbounded,
    Bounded {
        bandwidth_hz: f64,
        lower_hz: f64,
        upper_hz: f64,
    },
}

impl SquintBandwidth {
    pub fn hz(self) -> Option<f64> {
        match self {
            SquintBandwidth::Unbounded => None,
            SquintBandwidth::Bounded { bandwidth_hz, .. } => Some(bandwidth_hz),
        }
    }
}

/// 3 dB squint bandwidth measured on the simulated aperture.
///
/// The profile is synthesized at `f0` (and quantized to the aperture's
/// phase resolution), then held fixed while the gain toward the target's
/// outgoing direction is tracked in frequency. Each side is stepped outward
/// until the gain first falls 3 dB below its value at `f0`, then the
/// crossing is bisected to [`SQUINT_RESOLUTION_HZ`].
pub fn squint_bandwidth_numeric(
    aperture: &ApertureDesign,
    target: &SteeringTarget,
    f0: Frequency,
) -> Result<SquintBandwidth> {
    target.validate()?;
    let [ux, uy, _] = target.outgoing.unit_vector();
    let gradient = match target.incident {
        Incidence::PlaneWave(d) => {
            let [sx, sy, _] = d.unit_vector();
            ((sx + ux).powi(2) + (sy + uy).powi(2)).sqrt()
        }
        Incidence::PointSource { .. } => f64::INFINITY,
    };
    if gradient < 1e-12 {
        return Ok(SquintBandwidth::Unbounded);
    }

    let frozen_at = aperture.clone().with_design_frequency(f0);
    let mut profile = synthesize_profile(&frozen_at, target)?;
    if let PhaseResolution::Bits(b) = aperture.phase_resolution() {
        profile = quantize_profile(&profile, b)?;
    }
    let (theta, phi) = (target.outgoing.theta_deg, target.outgoing.phi_deg);
    let gain =
        |hz: f64| -> Result<f64> { directional_gain(&frozen_at, &profile, Frequency::new(hz)?, target, theta, phi) };
    let reference = gain(f0.hz())?;
    if !(reference > 0.0) {
        return Err(Error::Solver(format!(
            "no gain toward ({theta}, {phi}) deg at {:.6} GHz",
            f0.ghz()
        )));
    }
    let threshold = reference / 2.0;

    // Step no wider than a tenth of the first-null offset so the main lobe
    // cannot be skipped.
    let extent = aperture.side() * std::f64::consts::SQRT_2;
    let null_offset = SPEED_OF_LIGHT / (extent * gradient.min(2.0));
    let step = (0.1 * null_offset).min(f0.hz() * 1e-3).max(SQUINT_RESOLUTION_HZ);

    let crossing = |direction: f64| -> Result<f64> {
        let limit = f0.hz() * (1.0 + direction * SQUINT_SEARCH_SPAN);
        let mut inside = f0.hz();
        loop {
            let probe = inside + direction * step;
            let beyond = if direction > 0.0 {
                probe >= limit
            } else {
                probe <= limit
            };
            let probe = if beyond { limit } else { probe };
            if gain(probe)? < threshold {
                let mut outside = probe;
                while (outside - inside).abs() > SQUINT_RESOLUTION_HZ {
                    let mid = 0.5 * (inside + outside);
                    if gain(mid)? < threshold {
                        outside = mid;
                    } else {
                        inside = mid;
                    }
                }
                return Ok(0.5 * (inside + outside));
            }
            if beyond {
                return Err(Error::Solver(format!(
                    "3 dB point not bracketed within ±{:.0}% of f0 (search limit {:.6} GHz)",
                    SQUINT_SEARCH_SPAN * 100.0,
                    limit * 1e-9
                )));
            }
            inside = probe;
        }
    };

    let upper_hz = crossing(1.0)?;
    let lower_hz = crossing(-1.0)?;
    Ok(SquintBandwidth::Bounded {
        bandwidth_hz: upper_hz - lower_hz,
        lower_hz,
        upper_hz,
    })
}

/// Closed-form squint bandwidth β·c / (D·tanθ).
///
/// `f0` does not enter the formula; it is kept so the signature matches the
/// numeric solver and is validated the same way.
pub fn squint_bandwidth_analytic(panel_side: f64, theta_deg: f64, f0: Frequency, beta: f64) -> Result<f64> {
    let _ = f0;
    if !(theta_deg > 0.0 && theta_deg < 90.0) {
        return Err(Error::domain(
            "steering angle",
            format!("{theta_deg} deg must lie in (0, 90)"),
        ));
    }
    if !(panel_side > 0.0 && panel_side.is_finite()) {
        return Err(Error::domain("panel side", format!("{panel_side} m must be positive")));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::domain("beta", format!("{beta} must be positive")));
    }
    Ok(beta * SPEED_OF_LIGHT / (panel_side * theta_deg.to_radians().tan()))
}
