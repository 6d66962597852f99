//! Discrete reflective aperture model.
//!
//! A panel is a square grid of unit cells lying in the z = 0 plane, centred
//! on the origin, with the boresight along +z. Each cell applies a
//! reflection phase; the far-field response is the coherent sum of the
//! cell contributions (idealized array factor, no coupling, no
//! polarization).

mod pattern;
mod profile;
mod squint;

pub use pattern::{
    directional_gain, pattern_to_csv, peak_direction, radiation_pattern, scan_loss, PatternSample, PeakDirection,
    RadiationPattern, ThetaGrid,
};
pub use profile::{quantization_loss, quantize_profile, synthesize_profile, PhaseProfile};
pub use squint::{
    squint_bandwidth_analytic, squint_bandwidth_numeric, SquintBandwidth, DEFAULT_SQUINT_BETA, SQUINT_RESOLUTION_HZ,
    SQUINT_SEARCH_SPAN,
};

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::units::Frequency;

/// Phase resolution of a cell: a number of control bits, or unquantized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhaseResolution {
    Continuous,
    Bits(u32),
}

impl PhaseResolution {
    pub fn bits(bits: u32) -> Result<Self> {
        if bits == 0 {
            return Err(Error::invalid("phase_bits", "at least one bit is required"));
        }
        Ok(PhaseResolution::Bits(bits))
    }

    pub fn validate(self) -> Result<()> {
        match self {
            PhaseResolution::Bits(0) => Err(Error::invalid("phase_bits", "at least one bit is required")),
            _ => Ok(()),
        }
    }

    /// Number of discrete states, `None` when continuous.
    pub fn states(self) -> Option<u64> {
        match self {
            PhaseResolution::Continuous => None,
            PhaseResolution::Bits(b) => Some(1u64 << b.min(63)),
        }
    }

    /// True when `self` can represent every state of `other`.
    pub fn is_finer_or_equal(self, other: PhaseResolution) -> bool {
        match (self, other) {
            (PhaseResolution::Continuous, _) => true,
            (PhaseResolution::Bits(_), PhaseResolution::Continuous) => false,
            (PhaseResolution::Bits(a), PhaseResolution::Bits(b)) => a >= b,
        }
    }
}

impl fmt::Display for PhaseResolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhaseResolution::Continuous => f.write_str("continuous"),
            PhaseResolution::Bits(b) => write!(f, "{b}bit"),
        }
    }
}

impl Serialize for PhaseResolution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PhaseResolution::Continuous => serializer.serialize_str("continuous"),
            PhaseResolution::Bits(b) => serializer.serialize_u32(*b),
        }
    }
}

impl<'de> Deserialize<'de> for PhaseResolution {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Bits(u32),
            Word(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Bits(b) => PhaseResolution::bits(b).map_err(serde::de::Error::custom),
            Repr::Word(w) if w == "continuous" => Ok(PhaseResolution::Continuous),
            Repr::Word(w) => Err(serde::de::Error::custom(format!(
                "expected a bit count or \"continuous\", got {w:?}"
            ))),
        }
    }
}

/// A square panel of unit cells.
#[derive(Debug, Clone, PartialEq)]
pub struct ApertureDesign {
    design_frequency: Frequency,
    cells_per_side: usize,
    cell_spacing: f64,
    phase_resolution: PhaseResolution,
}

impl ApertureDesign {
    pub fn new(
        design_frequency: Frequency,
        cells_per_side: usize,
        cell_spacing: f64,
        phase_resolution: PhaseResolution,
    ) -> Result<Self> {
        if cells_per_side == 0 {
            return Err(Error::invalid("cells_per_side", "must be at least 1"));
        }
        if !(cell_spacing > 0.0 && cell_spacing.is_finite()) {
            return Err(Error::invalid(
                "cell_spacing",
                format!("{cell_spacing} m must be positive"),
            ));
        }
        phase_resolution.validate()?;
        Ok(ApertureDesign {
            design_frequency,
            cells_per_side,
            cell_spacing,
            phase_resolution,
        })
    }

    /// Panel with the usual λ/2 cell spacing at the design frequency.
    pub fn half_wave(
        design_frequency: Frequency,
        cells_per_side: usize,
        phase_resolution: PhaseResolution,
    ) -> Result<Self> {
        Self::new(
            design_frequency,
            cells_per_side,
            design_frequency.wavelength() / 2.0,
            phase_resolution,
        )
    }

    pub fn design_frequency(&self) -> Frequency {
        self.design_frequency
    }

    pub fn cells_per_side(&self) -> usize {
        self.cells_per_side
    }

    pub fn cell_count(&self) -> usize {
        self.cells_per_side * self.cells_per_side
    }

    pub fn cell_spacing(&self) -> f64 {
        self.cell_spacing
    }

    pub fn phase_resolution(&self) -> PhaseResolution {
        self.phase_resolution
    }

    /// Physical side length in meters.
    pub fn side(&self) -> f64 {
        self.cells_per_side as f64 * self.cell_spacing
    }

    pub fn with_phase_resolution(mut self, resolution: PhaseResolution) -> Result<Self> {
        resolution.validate()?;
        self.phase_resolution = resolution;
        Ok(self)
    }

    pub fn with_design_frequency(mut self, f: Frequency) -> Self {
        self.design_frequency = f;
        self
    }

    /// Centre of cell (row, col) in the panel plane; x runs along columns.
    pub fn cell_center(&self, row: usize, col: usize) -> [f64; 2] {
        let mid = (self.cells_per_side as f64 - 1.0) / 2.0;
        [
            (col as f64 - mid) * self.cell_spacing,
            (row as f64 - mid) * self.cell_spacing,
        ]
    }

    /// Cell centres in row-major order.
    pub fn cell_centers(&self) -> Vec<[f64; 2]> {
        let n = self.cells_per_side;
        (0..n)
            .flat_map(|row| (0..n).map(move |col| (row, col)))
            .map(|(row, col)| self.cell_center(row, col))
            .collect()
    }
}

/// Size a square panel on a λ/2 grid: cells per side is `panel_side / (λ/2)`
/// rounded to nearest, ties up.
pub fn build_grid(panel_side: f64, f: Frequency) -> Result<ApertureDesign> {
    if !(panel_side > 0.0 && panel_side.is_finite()) {
        return Err(Error::domain("panel side", format!("{panel_side} m must be positive")));
    }
    let spacing = f.wavelength() / 2.0;
    let ratio = panel_side / spacing;
    // 1e-9 absorbs representation error on a side given as exactly one cell
    if ratio < 1.0 - 1e-9 {
        return Err(Error::domain(
            "panel side",
            format!(
                "{:.4} mm is smaller than one {:.4} mm cell",
                panel_side * 1e3,
                spacing * 1e3
            ),
        ));
    }
    let cells = (ratio + 0.5).floor() as usize;
    ApertureDesign::new(f, cells.max(1), spacing, PhaseResolution::Continuous)
}

/// A far-field direction: polar angle from boresight and azimuth, degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    pub theta_deg: f64,
    #[serde(default)]
    pub phi_deg: f64,
}

impl Direction {
    pub fn new(theta_deg: f64, phi_deg: f64) -> Result<Self> {
        let d = Direction { theta_deg, phi_deg };
        d.validate()?;
        Ok(d)
    }

    pub fn boresight() -> Self {
        Direction {
            theta_deg: 0.0,
            phi_deg: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.theta_deg >= 0.0 && self.theta_deg < 90.0) {
            return Err(Error::invalid(
                "theta_deg",
                format!("{} must lie in [0, 90)", self.theta_deg),
            ));
        }
        if !self.phi_deg.is_finite() {
            return Err(Error::invalid("phi_deg", "must be finite"));
        }
        Ok(())
    }

    /// Unit vector components (x, y) in the panel plane, and z.
    pub fn unit_vector(&self) -> [f64; 3] {
        let (t, p) = (self.theta_deg.to_radians(), self.phi_deg.to_radians());
        [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()]
    }
}

/// How the panel is illuminated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Incidence {
    /// Plane wave arriving from `Direction` (the direction the source lies in).
    PlaneWave(Direction),
    /// Point source at (x, y, z) meters, z > 0.
    PointSource { x_m: f64, y_m: f64, z_m: f64 },
}

impl Incidence {
    pub fn normal() -> Self {
        Incidence::PlaneWave(Direction::boresight())
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Incidence::PlaneWave(d) => d.validate(),
            Incidence::PointSource { x_m, y_m, z_m } => {
                if !(x_m.is_finite() && y_m.is_finite()) {
                    return Err(Error::invalid("source", "coordinates must be finite"));
                }
                if !(*z_m > 0.0 && z_m.is_finite()) {
                    return Err(Error::invalid(
                        "source z_m",
                        format!("{z_m} must be in front of the panel"),
                    ));
                }
                Ok(())
            }
        }
    }

    /// Incident path length to a cell (up to a constant) and the cosine of
    /// the local incidence angle.
    pub(crate) fn path_and_cosine(&self, r: [f64; 2]) -> (f64, f64) {
        match *self {
            Incidence::PlaneWave(d) => {
                let [sx, sy, sz] = d.unit_vector();
                // wave propagates along -s; incident phase is +k s·r
                (-(sx * r[0] + sy * r[1]), sz)
            }
            Incidence::PointSource { x_m, y_m, z_m } => {
                let (dx, dy) = (r[0] - x_m, r[1] - y_m);
                let dist = (dx * dx + dy * dy + z_m * z_m).sqrt();
                (dist, z_m / dist)
            }
        }
    }
}

/// Illumination plus the outgoing direction the profile should steer to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteeringTarget {
    pub incident: Incidence,
    pub outgoing: Direction,
}

impl SteeringTarget {
    pub fn new(incident: Incidence, outgoing: Direction) -> Result<Self> {
        let t = SteeringTarget { incident, outgoing };
        t.validate()?;
        Ok(t)
    }

    /// Normal plane-wave incidence steered to `theta_deg` in the φ = 0 plane.
    pub fn normal_to(theta_deg: f64) -> Result<Self> {
        Self::new(Incidence::normal(), Direction::new(theta_deg, 0.0)?)
    }

    pub fn validate(&self) -> Result<()> {
        self.incident.validate()?;
        self.outgoing.validate()
    }
}
