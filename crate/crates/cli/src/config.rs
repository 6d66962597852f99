//! Run configuration: one JSON document per invocation.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use ris_core::aperture::ThetaGrid;
use ris_core::link::RcsModel;
use ris_core::{
    build_grid, ApertureDesign, BandwidthMethod, Direction, Frequency, Incidence, PhaseResolution, PowerLevel,
    ScenarioSpec, SteeringTarget,
};

use crate::CliError;

pub const SCHEMA_V1: &str = "risplan.config/v1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty", with = "one_or_many")]
    pub scenario: Vec<ScenarioConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepAxis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bandwidth_method: Option<MethodName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<PatternConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub squint: Option<SquintConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power: Option<PowerConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputConfig>,
}

/// A scenario whose `theta_max_deg` may list several coverage angles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default)]
    pub name: String,
    pub frequency_hz: Frequency,
    pub d1_m: f64,
    pub d2_m: f64,
    pub total_antenna_gain_dbi: f64,
    pub radiated_power_dbm: PowerLevel,
    pub noise_density_dbm_per_hz: f64,
    pub noise_figure_db: f64,
    pub target_received_power_dbm: PowerLevel,
    pub reference_bandwidth_hz: f64,
    pub phase_bits: u32,
    #[serde(default = "two")]
    pub switches_per_bit: u32,
    #[serde(default = "quarter")]
    pub aperture_efficiency: f64,
    #[serde(with = "one_or_many")]
    pub theta_max_deg: Vec<f64>,
    #[serde(default)]
    pub rcs_model: RcsModel,
}

fn two() -> u32 {
    2
}

fn quarter() -> f64 {
    0.25
}

impl ScenarioConfig {
    pub fn spec(&self, theta_max_deg: f64) -> ScenarioSpec {
        ScenarioSpec {
            name: self.name.clone(),
            frequency_hz: self.frequency_hz,
            d1_m: self.d1_m,
            d2_m: self.d2_m,
            total_antenna_gain_dbi: self.total_antenna_gain_dbi,
            radiated_power_dbm: self.radiated_power_dbm,
            noise_density_dbm_per_hz: self.noise_density_dbm_per_hz,
            noise_figure_db: self.noise_figure_db,
            target_received_power_dbm: self.target_received_power_dbm,
            reference_bandwidth_hz: self.reference_bandwidth_hz,
            phase_bits: self.phase_bits,
            switches_per_bit: self.switches_per_bit,
            aperture_efficiency: self.aperture_efficiency,
            theta_max_deg,
            rcs_model: self.rcs_model,
        }
    }

    /// One validated spec per coverage angle.
    pub fn specs(&self, index: usize) -> Result<Vec<ScenarioSpec>, CliError> {
        if self.theta_max_deg.is_empty() {
            return Err(CliError::field(
                format!("scenario[{index}].theta_max_deg"),
                "at least one angle is required",
            ));
        }
        self.theta_max_deg
            .iter()
            .map(|&t| {
                let s = self.spec(t);
                s.validate()
                    .map_err(|e| CliError::within(&format!("scenario[{index}]"), e))?;
                Ok(s)
            })
            .collect()
    }
}

/// Parameters a sweep may vary. Each belongs to one subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    // report; frequency_hz also drives pattern observation frequencies
    RangeM,
    D1M,
    D2M,
    FrequencyHz,
    ThetaMaxDeg,
    TargetReceivedPowerDbm,
    TotalAntennaGainDbi,
    RadiatedPowerDbm,
    NoiseFigureDb,
    ApertureEfficiency,
    // squint
    PanelSideMm,
    ThetaDeg,
}

impl SweepParameter {
    pub const REPORT: &'static [SweepParameter] = &[
        SweepParameter::RangeM,
        SweepParameter::D1M,
        SweepParameter::D2M,
        SweepParameter::FrequencyHz,
        SweepParameter::ThetaMaxDeg,
        SweepParameter::TargetReceivedPowerDbm,
        SweepParameter::TotalAntennaGainDbi,
        SweepParameter::RadiatedPowerDbm,
        SweepParameter::NoiseFigureDb,
        SweepParameter::ApertureEfficiency,
    ];
    pub const PATTERN: &'static [SweepParameter] = &[SweepParameter::FrequencyHz];
    pub const SQUINT: &'static [SweepParameter] = &[SweepParameter::PanelSideMm, SweepParameter::ThetaDeg];

    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::RangeM => "range_m",
            SweepParameter::D1M => "d1_m",
            SweepParameter::D2M => "d2_m",
            SweepParameter::FrequencyHz => "frequency_hz",
            SweepParameter::ThetaMaxDeg => "theta_max_deg",
            SweepParameter::TargetReceivedPowerDbm => "target_received_power_dbm",
            SweepParameter::TotalAntennaGainDbi => "total_antenna_gain_dbi",
            SweepParameter::RadiatedPowerDbm => "radiated_power_dbm",
            SweepParameter::NoiseFigureDb => "noise_figure_db",
            SweepParameter::ApertureEfficiency => "aperture_efficiency",
            SweepParameter::PanelSideMm => "panel_side_mm",
            SweepParameter::ThetaDeg => "theta_deg",
        }
    }

    /// Apply a report-sweep value to a scenario.
    pub fn apply(self, s: &mut ScenarioSpec, v: f64) -> Result<(), CliError> {
        let bad = |e: ris_core::Error| CliError::within("sweep", e);
        match self {
            SweepParameter::RangeM => {
                s.d1_m = v / 2.0;
                s.d2_m = v / 2.0;
            }
            SweepParameter::D1M => s.d1_m = v,
            SweepParameter::D2M => s.d2_m = v,
            SweepParameter::FrequencyHz => s.frequency_hz = Frequency::new(v).map_err(bad)?,
            SweepParameter::ThetaMaxDeg => s.theta_max_deg = v,
            SweepParameter::TargetReceivedPowerDbm => s.target_received_power_dbm = PowerLevel::dbm(v).map_err(bad)?,
            SweepParameter::TotalAntennaGainDbi => s.total_antenna_gain_dbi = v,
            SweepParameter::RadiatedPowerDbm => s.radiated_power_dbm = PowerLevel::dbm(v).map_err(bad)?,
            SweepParameter::NoiseFigureDb => s.noise_figure_db = v,
            SweepParameter::ApertureEfficiency => s.aperture_efficiency = v,
            SweepParameter::PanelSideMm | SweepParameter::ThetaDeg => {
                return Err(CliError::field(
                    "sweep.parameter",
                    format!("{} does not apply to report", self.name()),
                ))
            }
        }
        Ok(())
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Linear sweep, both ends inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxis {
    pub parameter: SweepParameter,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl SweepAxis {
    pub fn validate(&self, allowed: &[SweepParameter], command: &str) -> Result<(), CliError> {
        if !allowed.contains(&self.parameter) {
            let names: Vec<_> = allowed.iter().map(|p| p.name()).collect();
            return Err(CliError::field(
                "sweep.parameter",
                format!(
                    "{} is not sweepable for {command}; expected one of {}",
                    self.parameter,
                    names.join(", ")
                ),
            ));
        }
        if self.steps < 2 {
            return Err(CliError::field(
                "sweep.steps",
                format!("{} must be at least 2", self.steps),
            ));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(CliError::field("sweep", "start and stop must be finite"));
        }
        if self.start == self.stop {
            return Err(CliError::field("sweep", "start and stop must differ"));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.steps;
        (0..n)
            .map(|i| {
                if i + 1 == n {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodName {
    Numeric,
    Analytic,
}

impl MethodName {
    pub fn method(self) -> BandwidthMethod {
        match self {
            MethodName::Numeric => BandwidthMethod::Numeric,
            MethodName::Analytic => BandwidthMethod::analytic(),
        }
    }
}

/// Panel geometry: a physical side (cells at λ/2 unless a spacing is
/// given) or an explicit cell count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApertureConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub panel_side_mm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells_per_side: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cell_spacing_mm: Option<f64>,
}

impl ApertureConfig {
    pub fn design(&self, f: Frequency, field: &str) -> Result<ApertureDesign, CliError> {
        let wrap = |e| CliError::within(field, e);
        match (self.panel_side_mm, self.cells_per_side, self.cell_spacing_mm) {
            (Some(side), None, None) => build_grid(side * 1e-3, f).map_err(wrap),
            (Some(side), None, Some(spacing)) => {
                let cells = (side / spacing).round();
                if !(cells >= 1.0 && cells.is_finite()) {
                    return Err(CliError::field(
                        format!("{field}.panel_side_mm"),
                        format!("{side} mm holds no {spacing} mm cells"),
                    ));
                }
                ApertureDesign::new(f, cells as usize, spacing * 1e-3, PhaseResolution::Continuous).map_err(wrap)
            }
            (None, Some(n), None) => ApertureDesign::half_wave(f, n, PhaseResolution::Continuous).map_err(wrap),
            (None, Some(n), Some(spacing)) => {
                ApertureDesign::new(f, n, spacing * 1e-3, PhaseResolution::Continuous).map_err(wrap)
            }
            (Some(_), Some(_), _) => Err(CliError::field(field, "give panel_side_mm or cells_per_side, not both")),
            (None, None, _) => Err(CliError::field(field, "panel_side_mm or cells_per_side is required")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternConfig {
    /// Frequency the phase profile is synthesized for.
    pub frequency_hz: Frequency,
    pub aperture: ApertureConfig,
    #[serde(default = "Incidence::normal")]
    pub incidence: Incidence,
    pub steer: Direction,
    pub resolutions: Vec<PhaseResolution>,
    pub theta_grid: ThetaGrid,
    #[serde(default)]
    pub phi_cut_deg: f64,
    /// Observation frequencies; the design frequency when empty.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub frequencies_hz: Vec<Frequency>,
}

impl PatternConfig {
    pub fn target(&self) -> Result<SteeringTarget, CliError> {
        SteeringTarget::new(self.incidence, self.steer).map_err(|e| CliError::within("pattern", e))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquintConfig {
    pub frequency_hz: Frequency,
    pub panel_side_mm: f64,
    pub theta_deg: f64,
    #[serde(default = "continuous")]
    pub resolution: PhaseResolution,
    #[serde(default = "default_beta")]
    pub beta: f64,
}

fn continuous() -> PhaseResolution {
    PhaseResolution::Continuous
}

fn default_beta() -> f64 {
    ris_core::aperture::DEFAULT_SQUINT_BETA
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerConfig {
    /// Explicit count; derived from the scenarios when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub switch_count: Option<u64>,
    #[serde(default = "one")]
    pub on_fraction: f64,
    /// Extra catalog records merged over the built-in table, resolved
    /// relative to the config file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<PathBuf>,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let config: RunConfig = serde_json::from_str(text).map_err(|e| CliError::Validation(format!("config: {e}")))?;
        if config.schema != SCHEMA_V1 {
            return Err(CliError::field(
                "schema",
                format!("unsupported schema {:?}; expected {SCHEMA_V1:?}", config.schema),
            ));
        }
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes") + "\n"
    }

    pub fn output_format(&self) -> Option<Format> {
        self.output.as_ref().and_then(|o| o.format)
    }

    pub fn output_path(&self) -> Option<&Path> {
        self.output.as_ref().and_then(|o| o.path.as_deref())
    }
}

/// A single value or a list; goes through `Value` so field errors survive.
mod one_or_many {
    use serde::de::{DeserializeOwned, Error};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Value;

    pub fn serialize<T: Serialize, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        v.serialize(s)
    }

    pub fn deserialize<'de, T: DeserializeOwned, D: Deserializer<'de>>(d: D) -> Result<Vec<T>, D::Error> {
        match Value::deserialize(d)? {
            Value::Array(items) => items
                .into_iter()
                .enumerate()
                .map(|(i, v)| serde_json::from_value(v).map_err(|e| D::Error::custom(format!("[{i}]: {e}"))))
                .collect(),
            v => Ok(vec![serde_json::from_value(v).map_err(D::Error::custom)?]),
        }
    }
}
