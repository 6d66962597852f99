use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ApertureDesign, PhaseProfile, SteeringTarget};
use crate::error::{Error, Result};
use crate::units::Frequency;

/// Gains below this are reported at the floor so every sample stays finite.
const GAIN_FLOOR_DB: f64 = -300.0;

/// Evenly spaced polar angles in degrees, inclusive of both ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaGrid {
    pub start_deg: f64,
    pub stop_deg: f64,
    pub steps: usize,
}

impl ThetaGrid {
    pub fn new(start_deg: f64, stop_deg: f64, steps: usize) -> Result<Self> {
        let g = ThetaGrid {
            start_deg,
            stop_deg,
            steps,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::invalid("theta_grid.steps", "angle grid is empty"));
        }
        for (name, v) in [
            ("theta_grid.start_deg", self.start_deg),
            ("theta_grid.stop_deg", self.stop_deg),
        ] {
            if !(v > -90.0 && v < 90.0) {
                return Err(Error::invalid(name, format!("{v} must lie in (-90, 90)")));
            }
        }
        if self.steps > 1 && self.stop_deg <= self.start_deg {
            return Err(Error::invalid("theta_grid", "stop_deg must exceed start_deg"));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start_deg];
        }
        let step = (self.stop_deg - self.start_deg) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.stop_deg
                } else {
                    self.start_deg + step * i as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PatternSample {
    pub theta_deg: f64,
    pub gain_db: f64,
}

/// Sampled response in one φ cut. Gains are in dB relative to the
/// broadside peak of the same aperture with a uniform profile under normal
/// incidence.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiationPattern {
    frequency: Frequency,
    phi_cut_deg: f64,
    samples: Vec<PatternSample>,
}

impl RadiationPattern {
    pub fn new(frequency: Frequency, phi_cut_deg: f64, samples: Vec<PatternSample>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::invalid("pattern", "no samples"));
        }
        if samples.windows(2).any(|w| w[1].theta_deg <= w[0].theta_deg) {
            return Err(Error::invalid("pattern", "sample angles must be strictly increasing"));
        }
        if samples
            .iter()
            .any(|s| !s.gain_db.is_finite() || !s.theta_deg.is_finite())
        {
            return Err(Error::invalid("pattern", "samples must be finite"));
        }
        Ok(RadiationPattern {
            frequency,
            phi_cut_deg,
            samples,
        })
    }

    pub fn frequency(&self) -> Frequency {
        self.frequency
    }

    pub fn phi_cut_deg(&self) -> f64 {
        self.phi_cut_deg
    }

    pub fn samples(&self) -> &[PatternSample] {
        &self.samples
    }

    /// Gain of the sample nearest to `theta_deg`.
    pub fn gain_near(&self, theta_deg: f64) -> f64 {
        self.samples
            .iter()
            .min_by(|a, b| {
                (a.theta_deg - theta_deg)
                    .abs()
                    .total_cmp(&(b.theta_deg - theta_deg).abs())
            })
            .map(|s| s.gain_db)
            .unwrap_or(GAIN_FLOOR_DB)
    }
}

/// Cell contributions that do not depend on the observation direction.
struct Illuminated {
    x: Vec<f64>,
    y: Vec<f64>,
    field: Vec<Complex64>,
    k: f64,
    norm: f64,
}

impl Illuminated {
    fn new(aperture: &ApertureDesign, profile: &PhaseProfile, f: Frequency, target: &SteeringTarget) -> Result<Self> {
        target.validate()?;
        if profile.cells_per_side() != aperture.cells_per_side() {
            return Err(Error::invalid(
                "phase profile",
                format!(
                    "{0}x{0} profile does not match {1}x{1} aperture",
                    profile.cells_per_side(),
                    aperture.cells_per_side()
                ),
            ));
        }
        let k = f.wavenumber();
        let centers = aperture.cell_centers();
        let mut x = Vec::with_capacity(centers.len());
        let mut y = Vec::with_capacity(centers.len());
        let mut field = Vec::with_capacity(centers.len());
        for (r, &phi) in centers.iter().zip(profile.phases()) {
            let (path, cos_in) = target.incident.path_and_cosine(*r);
            x.push(r[0]);
            y.push(r[1]);
            field.push(Complex64::from_polar(cos_in.max(0.0).sqrt(), phi - k * path));
        }
        Ok(Illuminated {
            x,
            y,
            field,
            k,
            norm: centers.len() as f64,
        })
    }

    /// Normalized power gain toward (θ, φ); θ may be negative within a cut.
    fn gain(&self, theta_deg: f64, phi_deg: f64) -> f64 {
        let (t, p) = (theta_deg.to_radians(), phi_deg.to_radians());
        let (ux, uy) = (t.sin() * p.cos(), t.sin() * p.sin());
        let (kx, ky) = (self.k * ux, self.k * uy);
        let sum: Complex64 = self
            .field
            .iter()
            .zip(self.x.iter().zip(&self.y))
            .map(|(c, (x, y))| c * Complex64::cis(kx * x + ky * y))
            .sum();
        let projection = t.cos().abs();
        sum.norm_sqr() * projection / (self.norm * self.norm)
    }
}

fn to_db(power: f64) -> f64 {
    if power > 0.0 {
        (10.0 * power.log10()).max(GAIN_FLOOR_DB)
    } else {
        GAIN_FLOOR_DB
    }
}

/// Normalized linear power gain of the illuminated aperture toward one direction.
pub fn directional_gain(
    aperture: &ApertureDesign,
    profile: &PhaseProfile,
    f: Frequency,
    target: &SteeringTarget,
    theta_deg: f64,
    phi_deg: f64,
) -> Result<f64> {
    Ok(Illuminated::new(aperture, profile, f, target)?.gain(theta_deg, phi_deg))
}

/// Coherent array-factor pattern over `thetas` in the cut `phi_cut_deg`.
///
/// Each cell is weighted by √(cosθ_in·cosθ): the panel's projected area
/// toward the source and toward the observer. Samples are evaluated in
/// parallel; the result does not depend on scheduling.
pub fn radiation_pattern(
    aperture: &ApertureDesign,
    profile: &PhaseProfile,
    f: Frequency,
    target: &SteeringTarget,
    phi_cut_deg: f64,
    thetas: &[f64],
) -> Result<RadiationPattern> {
    if thetas.is_empty() {
        return Err(Error::invalid("theta_grid", "angle grid is empty"));
    }
    if thetas.iter().any(|t| !(*t > -90.0 && *t < 90.0)) {
        return Err(Error::invalid("theta_grid", "angles must lie in (-90, 90)"));
    }
    let lit = Illuminated::new(aperture, profile, f, target)?;
    let samples = thetas
        .par_iter()
        .map(|&theta_deg| PatternSample {
            theta_deg,
            gain_db: to_db(lit.gain(theta_deg, phi_cut_deg)),
        })
        .collect();
    RadiationPattern::new(f, phi_cut_deg, samples)
}

/// One-way scan loss of a planar aperture, −10·log10(cos θ) dB.
pub fn scan_loss(theta_deg: f64) -> Result<f64> {
    if !(0.0..90.0).contains(&theta_deg) {
        return Err(Error::domain(
            "scan angle",
            format!("{theta_deg} deg must lie in [0, 90)"),
        ));
    }
    Ok(-10.0 * theta_deg.to_radians().cos().log10())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakDirection {
    pub theta_deg: f64,
    pub gain_db: f64,
    /// Every sample had the same gain; `theta_deg` is the first sample.
    pub degenerate: bool,
}

/// Direction of the pattern maximum, refined with a parabola through the
/// maximum sample and its two neighbours.
pub fn peak_direction(pattern: &RadiationPattern) -> Result<PeakDirection> {
    let s = pattern.samples();
    if s.is_empty() {
        return Err(Error::invalid("pattern", "no samples"));
    }
    let mut best = 0;
    for (i, sample) in s.iter().enumerate() {
        if sample.gain_db > s[best].gain_db {
            best = i;
        }
    }
    if s.iter().all(|x| x.gain_db == s[0].gain_db) {
        return Ok(PeakDirection {
            theta_deg: s[0].theta_deg,
            gain_db: s[0].gain_db,
            degenerate: true,
        });
    }
    let mut peak = PeakDirection {
        theta_deg: s[best].theta_deg,
        gain_db: s[best].gain_db,
        degenerate: false,
    };
    if best > 0 && best + 1 < s.len() {
        let (x0, x1, x2) = (s[best - 1].theta_deg, s[best].theta_deg, s[best + 1].theta_deg);
        let (g0, g1, g2) = (s[best - 1].gain_db, s[best].gain_db, s[best + 1].gain_db);
        let num = (x1 - x0).powi(2) * (g1 - g2) - (x1 - x2).powi(2) * (g1 - g0);
        let den = (x1 - x0) * (g1 - g2) - (x1 - x2) * (g1 - g0);
        if den.abs() > f64::EPSILON {
            peak.theta_deg = (x1 - 0.5 * num / den).clamp(x0, x2);
        }
    }
    Ok(peak)
}

/// CSV with header `theta_deg,gain_db`, nine significant digits per value.
pub fn pattern_to_csv(pattern: &RadiationPattern) -> String {
    let mut out = String::from("theta_deg,gain_db\n");
    for s in pattern.samples() {
        out.push_str(&format!("{:.8e},{:.8e}\n", s.theta_deg, s.gain_db));
    }
    out
}
