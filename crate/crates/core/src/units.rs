//! Units, conversions and the closed-form radio formulas shared by the
//! planner, the aperture simulator and the switch catalog.
//!
//! Powers are carried in dBm and gains in dB at every public boundary;
//! linear values only exist inside computations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Speed of light in vacuum, exact SI value (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// A strictly positive frequency in hertz.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Frequency(f64);

impl Frequency {
    pub fn new(hz: f64) -> Result<Self> {
        if hz.is_finite() && hz > 0.0 {
            Ok(Frequency(hz))
        } else {
            Err(Error::domain(
                "frequency",
                format!("{hz} Hz must be positive and finite"),
            ))
        }
    }

    pub fn from_ghz(ghz: f64) -> Result<Self> {
        Self::new(ghz * 1e9)
    }

    pub fn hz(self) -> f64 {
        self.0
    }

    pub fn ghz(self) -> f64 {
        self.0 * 1e-9
    }

    /// Free-space wavelength in meters.
    pub fn wavelength(self) -> f64 {
        SPEED_OF_LIGHT / self.0
    }

    /// Free-space wavenumber 2π/λ in rad/m.
    pub fn wavenumber(self) -> f64 {
        2.0 * std::f64::consts::PI / self.wavelength()
    }

    pub fn scaled(self, factor: f64) -> Result<Self> {
        Self::new(self.0 * factor)
    }
}

impl TryFrom<f64> for Frequency {
    type Error = Error;

    fn try_from(hz: f64) -> Result<Self> {
        Frequency::new(hz)
    }
}

impl From<Frequency> for f64 {
    fn from(f: Frequency) -> f64 {
        f.0
    }
}

/// An absolute power level in dBm.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct PowerLevel(f64);

impl PowerLevel {
    pub fn dbm(value: f64) -> Result<Self> {
        if value.is_finite() {
            Ok(PowerLevel(value))
        } else {
            Err(Error::domain("power level", format!("{value} dBm is not finite")))
        }
    }

    pub fn as_dbm(self) -> f64 {
        self.0
    }

    pub fn as_milliwatts(self) -> f64 {
        linear_from_db(self.0)
    }
}

impl TryFrom<f64> for PowerLevel {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        PowerLevel::dbm(value)
    }
}

impl From<PowerLevel> for f64 {
    fn from(p: PowerLevel) -> f64 {
        p.0
    }
}

/// Receiver noise: thermal density plus the receiver noise figure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub density_dbm_per_hz: f64,
    pub noise_figure_db: f64,
}

impl NoiseModel {
    pub fn new(density_dbm_per_hz: f64, noise_figure_db: f64) -> Result<Self> {
        let model = NoiseModel {
            density_dbm_per_hz,
            noise_figure_db,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.density_dbm_per_hz.is_finite() {
            return Err(Error::invalid("noise_density_dbm_per_hz", "must be finite"));
        }
        if !(self.noise_figure_db.is_finite() && self.noise_figure_db >= 0.0) {
            return Err(Error::invalid(
                "noise_figure_db",
                format!("{} dB must be finite and non-negative", self.noise_figure_db),
            ));
        }
        Ok(())
    }
}

/// λ = c/f in meters.
pub fn wavelength(f: Frequency) -> f64 {
    f.wavelength()
}

/// Wavelength for a raw frequency value; non-positive input is a domain error.
pub fn wavelength_hz(hz: f64) -> Result<f64> {
    Frequency::new(hz).map(wavelength)
}

pub fn db_from_linear(x: f64) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(10.0 * x.log10())
    } else {
        Err(Error::domain("linear ratio", format!("{x} must be positive")))
    }
}

pub fn linear_from_db(d: f64) -> f64 {
    10f64.powf(d / 10.0)
}

/// Noise power over `bandwidth_hz` in dBm: density + NF + 10·log10(B).
pub fn noise_power(noise: &NoiseModel, bandwidth_hz: f64) -> Result<PowerLevel> {
    if !(bandwidth_hz > 0.0 && bandwidth_hz.is_finite()) {
        return Err(Error::domain(
            "bandwidth",
            format!("{bandwidth_hz} Hz must be positive"),
        ));
    }
    PowerLevel::dbm(noise.density_dbm_per_hz + noise.noise_figure_db + 10.0 * bandwidth_hz.log10())
}

/// Signal-to-noise ratio in dB.
pub fn snr(received: PowerLevel, noise: PowerLevel) -> f64 {
    received.as_dbm() - noise.as_dbm()
}

/// Shannon–Hartley capacity B·log2(1 + SNR) in bit/s, SNR given in dB.
pub fn shannon_capacity(bandwidth_hz: f64, snr_db: f64) -> Result<f64> {
    if !(bandwidth_hz > 0.0 && bandwidth_hz.is_finite()) {
        return Err(Error::domain(
            "bandwidth",
            format!("{bandwidth_hz} Hz must be positive"),
        ));
    }
    Ok(bandwidth_hz * (1.0 + linear_from_db(snr_db)).log2())
}
