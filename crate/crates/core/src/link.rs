//! Bi-static link budget through a reflective panel, inverse panel sizing,
//! switch counting and the end-to-end requirements evaluation.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::aperture::{
    build_grid, squint_bandwidth_analytic, squint_bandwidth_numeric, PhaseResolution, SquintBandwidth, SteeringTarget,
    DEFAULT_SQUINT_BETA,
};
use crate::error::{Error, Result};
use crate::units::{noise_power, shannon_capacity, snr, Frequency, NoiseModel, PowerLevel};

/// Scattering convention σ = (4π·A²/λ²) · η^efficiency_exponent · cos^cos_exponent(θ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RcsModel {
    #[serde(default = "one")]
    pub efficiency_exponent: f64,
    #[serde(default = "one")]
    pub cos_exponent: f64,
}

fn one() -> f64 {
    1.0
}

impl Default for RcsModel {
    fn default() -> Self {
        RcsModel {
            efficiency_exponent: 1.0,
            cos_exponent: 1.0,
        }
    }
}

impl RcsModel {
    fn validate(&self) -> Result<()> {
        for (field, v) in [
            ("rcs_model.efficiency_exponent", self.efficiency_exponent),
            ("rcs_model.cos_exponent", self.cos_exponent),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(field, format!("{v} must be positive")));
            }
        }
        Ok(())
    }

    /// Combined efficiency/scan factor multiplying the plate RCS.
    fn factor(&self, efficiency: f64, theta_deg: f64) -> f64 {
        efficiency.powf(self.efficiency_exponent) * theta_deg.to_radians().cos().powf(self.cos_exponent)
    }

    pub fn rcs(&self, area_m2: f64, wavelength_m: f64, efficiency: f64, theta_deg: f64) -> Result<f64> {
        self.validate()?;
        if !(area_m2 > 0.0 && area_m2.is_finite()) {
            return Err(Error::domain("panel area", format!("{area_m2} m² must be positive")));
        }
        if !(wavelength_m > 0.0 && wavelength_m.is_finite()) {
            return Err(Error::domain(
                "wavelength",
                format!("{wavelength_m} m must be positive"),
            ));
        }
        if !(efficiency > 0.0 && efficiency <= 1.0) {
            return Err(Error::domain(
                "aperture efficiency",
                format!("{efficiency} must lie in (0, 1]"),
            ));
        }
        if !(0.0..90.0).contains(&theta_deg) {
            return Err(Error::domain(
                "steering angle",
                format!("{theta_deg} deg must lie in [0, 90)"),
            ));
        }
        Ok(4.0 * PI * area_m2 * area_m2 / (wavelength_m * wavelength_m) * self.factor(efficiency, theta_deg))
    }
}

/// Panel RCS in m² with the default convention: one power-efficiency factor
/// and a single cosθ projection.
pub fn ris_rcs(area_m2: f64, wavelength_m: f64, efficiency: f64, theta_deg: f64) -> Result<f64> {
    RcsModel::default().rcs(area_m2, wavelength_m, efficiency, theta_deg)
}

/// System specification of one RIS-aided link.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    #[serde(default)]
    pub name: String,
    pub frequency_hz: Frequency,
    /// Base station to panel, meters.
    pub d1_m: f64,
    /// Panel to terminal, meters.
    pub d2_m: f64,
    pub total_antenna_gain_dbi: f64,
    pub radiated_power_dbm: PowerLevel,
    pub noise_density_dbm_per_hz: f64,
    pub noise_figure_db: f64,
    pub target_received_power_dbm: PowerLevel,
    pub reference_bandwidth_hz: f64,
    pub phase_bits: u32,
    #[serde(default = "default_switches_per_bit")]
    pub switches_per_bit: u32,
    #[serde(default = "default_efficiency")]
    pub aperture_efficiency: f64,
    pub theta_max_deg: f64,
    #[serde(default)]
    pub rcs_model: RcsModel,
}

fn default_switches_per_bit() -> u32 {
    2
}

fn default_efficiency() -> f64 {
    0.25
}

impl ScenarioSpec {
    /// Table-style scenario at 140 GHz with the link split evenly over `range_m`.
    pub fn d_band(name: &str, range_m: f64, theta_max_deg: f64) -> Result<Self> {
        let s = ScenarioSpec {
            name: name.to_string(),
            frequency_hz: Frequency::from_ghz(140.0)?,
            d1_m: range_m / 2.0,
            d2_m: range_m / 2.0,
            total_antenna_gain_dbi: 56.0,
            radiated_power_dbm: PowerLevel::dbm(20.0)?,
            noise_density_dbm_per_hz: -174.0,
            noise_figure_db: 5.0,
            target_received_power_dbm: PowerLevel::dbm(-59.0)?,
            reference_bandwidth_hz: 10e9,
            phase_bits: 2,
            switches_per_bit: 2,
            aperture_efficiency: 0.25,
            theta_max_deg,
            rcs_model: RcsModel::default(),
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        for (field, v) in [("d1_m", self.d1_m), ("d2_m", self.d2_m)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(field, format!("{v} m must be positive")));
            }
        }
        if !self.total_antenna_gain_dbi.is_finite() {
            return Err(Error::invalid("total_antenna_gain_dbi", "must be finite"));
        }
        self.noise().validate()?;
        if !(self.reference_bandwidth_hz > 0.0 && self.reference_bandwidth_hz.is_finite()) {
            return Err(Error::invalid(
                "reference_bandwidth_hz",
                format!("{} must be positive", self.reference_bandwidth_hz),
            ));
        }
        if self.phase_bits == 0 {
            return Err(Error::invalid("phase_bits", "at least one bit is required"));
        }
        if self.switches_per_bit == 0 {
            return Err(Error::invalid(
                "switches_per_bit",
                "at least one switch per bit is required",
            ));
        }
        if !(self.aperture_efficiency > 0.0 && self.aperture_efficiency <= 1.0) {
            return Err(Error::invalid(
                "aperture_efficiency",
                format!("{} must lie in (0, 1]", self.aperture_efficiency),
            ));
        }
        if !(self.theta_max_deg > 0.0 && self.theta_max_deg < 90.0) {
            return Err(Error::invalid(
                "theta_max_deg",
                format!("{} must lie in (0, 90)", self.theta_max_deg),
            ));
        }
        self.rcs_model.validate()
    }

    pub fn noise(&self) -> NoiseModel {
        NoiseModel {
            density_dbm_per_hz: self.noise_density_dbm_per_hz,
            noise_figure_db: self.noise_figure_db,
        }
    }

    pub fn wavelength(&self) -> f64 {
        self.frequency_hz.wavelength()
    }

    /// Terms of the budget that do not depend on σ, in dB.
    fn sigma_free_terms_db(&self) -> f64 {
        self.radiated_power_dbm.as_dbm() + self.total_antenna_gain_dbi + 20.0 * self.wavelength().log10()
            - 30.0 * (4.0 * PI).log10()
            - 20.0 * self.d1_m.log10()
            - 20.0 * self.d2_m.log10()
    }
}

/// Bi-static radar equation:
/// Pr = Pt + G + 10·log10(λ²σ) − 30·log10(4π) − 20·log10(d1) − 20·log10(d2).
pub fn received_power(s: &ScenarioSpec, sigma_m2: f64) -> Result<PowerLevel> {
    s.validate()?;
    if !(sigma_m2 > 0.0 && sigma_m2.is_finite()) {
        return Err(Error::domain("rcs", format!("{sigma_m2} m² must be positive")));
    }
    PowerLevel::dbm(s.sigma_free_terms_db() + 10.0 * sigma_m2.log10())
}

/// RCS needed to land exactly on the target received power.
pub fn required_rcs(s: &ScenarioSpec) -> Result<f64> {
    s.validate()?;
    let sigma_db = s.target_received_power_dbm.as_dbm() - s.sigma_free_terms_db();
    let sigma = 10f64.powf(sigma_db / 10.0);
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::Solver(format!(
            "required RCS of {sigma_db:.3} dBsm is not representable"
        )));
    }
    Ok(sigma)
}

/// Side of the square panel whose RCS at θ_max closes the budget:
/// L = (σ·λ² / (4π·η·cosθ_max))^(1/4) under the configured convention.
pub fn required_panel_side(s: &ScenarioSpec) -> Result<f64> {
    let sigma = required_rcs(s)?;
    let lambda = s.wavelength();
    let factor = s.rcs_model.factor(s.aperture_efficiency, s.theta_max_deg);
    let side = (sigma * lambda * lambda / (4.0 * PI * factor)).powf(0.25);
    if !(side > 0.0 && side.is_finite()) {
        return Err(Error::Solver(format!("panel side {side} m is not representable")));
    }
    Ok(side)
}

/// Total RF switches on the panel: cells² × bits × switches per bit.
pub fn switch_count(cells_per_side: u64, bits: u32, switches_per_bit: u32) -> u64 {
    cells_per_side * cells_per_side * bits as u64 * switches_per_bit as u64
}

/// How the 3 dB bandwidth of a report was obtained.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BandwidthMethod {
    /// Squint search on the simulated panel.
    #[default]
    Numeric,
    /// Closed-form β·c/(D·tanθ).
    Analytic { beta: f64 },
    /// The scenario's reference bandwidth, no squint limit.
    Reference,
}

impl BandwidthMethod {
    pub fn analytic() -> Self {
        BandwidthMethod::Analytic {
            beta: DEFAULT_SQUINT_BETA,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            BandwidthMethod::Numeric => "numeric",
            BandwidthMethod::Analytic { .. } => "analytic",
            BandwidthMethod::Reference => "reference",
        }
    }
}

impl fmt::Display for BandwidthMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Hardware requirements and performance bounds for one scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct RisRequirementsReport {
    pub scenario: ScenarioSpec,
    pub panel_side_m: f64,
    pub cells_per_side: u64,
    pub switch_count: u64,
    pub max_bandwidth_3db_hz: f64,
    pub snr_db: f64,
    pub capacity_bps: f64,
    pub bandwidth_method: BandwidthMethod,
}

/// Size the panel, count its switches and bound the link's bandwidth,
/// SNR and capacity.
pub fn evaluate_scenario(s: &ScenarioSpec, method: BandwidthMethod) -> Result<RisRequirementsReport> {
    s.validate()?;
    let f0 = s.frequency_hz;
    let panel_side_m = required_panel_side(s)?;
    let grid = build_grid(panel_side_m, f0)?.with_phase_resolution(PhaseResolution::bits(s.phase_bits)?)?;
    let cells_per_side = grid.cells_per_side() as u64;
    let switches = switch_count(cells_per_side, s.phase_bits, s.switches_per_bit);

    let bandwidth = match method {
        BandwidthMethod::Numeric => {
            let target = SteeringTarget::normal_to(s.theta_max_deg)?;
            match squint_bandwidth_numeric(&grid, &target, f0)? {
                SquintBandwidth::Bounded { bandwidth_hz, .. } => bandwidth_hz,
                SquintBandwidth::Unbounded => {
                    return Err(Error::Solver("squint bandwidth is unbounded".into()));
                }
            }
        }
        BandwidthMethod::Analytic { beta } => squint_bandwidth_analytic(grid.side(), s.theta_max_deg, f0, beta)?,
        BandwidthMethod::Reference => s.reference_bandwidth_hz,
    };

    let noise = noise_power(&s.noise(), bandwidth)?;
    let snr_db = snr(s.target_received_power_dbm, noise);
    let capacity_bps = shannon_capacity(bandwidth, snr_db)?;
    Ok(RisRequirementsReport {
        scenario: s.clone(),
        panel_side_m,
        cells_per_side,
        switch_count: switches,
        max_bandwidth_3db_hz: bandwidth,
        snr_db,
        capacity_bps,
        bandwidth_method: method,
    })
}
