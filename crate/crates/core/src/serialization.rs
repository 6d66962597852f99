//! Stable machine-readable output: nine significant digits for every float,
//! fixed field order, unit-suffixed keys.

use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::link::RisRequirementsReport;

/// Round to nine significant digits. Non-finite values pass through.
pub fn round_sig9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.8e}").parse().unwrap_or(x)
}

/// `serialize_with` helper applying [`round_sig9`].
pub fn sig9<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig9(*v))
}

/// Flat JSON form of a requirements report: the scenario echo, the report
/// fields and the bandwidth method tag.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRecord {
    pub scenario_name: String,
    #[serde(serialize_with = "sig9")]
    pub frequency_ghz: f64,
    #[serde(serialize_with = "sig9")]
    pub d1_m: f64,
    #[serde(serialize_with = "sig9")]
    pub d2_m: f64,
    #[serde(serialize_with = "sig9")]
    pub total_antenna_gain_dbi: f64,
    #[serde(serialize_with = "sig9")]
    pub radiated_power_dbm: f64,
    #[serde(serialize_with = "sig9")]
    pub noise_density_dbm_per_hz: f64,
    #[serde(serialize_with = "sig9")]
    pub noise_figure_db: f64,
    #[serde(serialize_with = "sig9")]
    pub target_received_power_dbm: f64,
    #[serde(serialize_with = "sig9")]
    pub reference_bandwidth_ghz: f64,
    pub phase_bits: u32,
    pub switches_per_bit: u32,
    #[serde(serialize_with = "sig9")]
    pub aperture_efficiency: f64,
    #[serde(serialize_with = "sig9")]
    pub theta_max_deg: f64,
    #[serde(serialize_with = "sig9")]
    pub panel_side_mm: f64,
    pub cells_per_side: u64,
    pub switch_count: u64,
    #[serde(serialize_with = "sig9")]
    pub max_bandwidth_3db_ghz: f64,
    #[serde(serialize_with = "sig9")]
    pub snr_db: f64,
    #[serde(serialize_with = "sig9")]
    pub capacity_gbps: f64,
    pub bandwidth_method: &'static str,
}

impl From<&RisRequirementsReport> for ReportRecord {
    fn from(r: &RisRequirementsReport) -> Self {
        let s = &r.scenario;
        ReportRecord {
            scenario_name: s.name.clone(),
            frequency_ghz: s.frequency_hz.ghz(),
            d1_m: s.d1_m,
            d2_m: s.d2_m,
            total_antenna_gain_dbi: s.total_antenna_gain_dbi,
            radiated_power_dbm: s.radiated_power_dbm.as_dbm(),
            noise_density_dbm_per_hz: s.noise_density_dbm_per_hz,
            noise_figure_db: s.noise_figure_db,
            target_received_power_dbm: s.target_received_power_dbm.as_dbm(),
            reference_bandwidth_ghz: s.reference_bandwidth_hz * 1e-9,
            phase_bits: s.phase_bits,
            switches_per_bit: s.switches_per_bit,
            aperture_efficiency: s.aperture_efficiency,
            theta_max_deg: s.theta_max_deg,
            panel_side_mm: r.panel_side_m * 1e3,
            cells_per_side: r.cells_per_side,
            switch_count: r.switch_count,
            max_bandwidth_3db_ghz: r.max_bandwidth_3db_hz * 1e-9,
            snr_db: r.snr_db,
            capacity_gbps: r.capacity_bps * 1e-9,
            bandwidth_method: r.bandwidth_method.tag(),
        }
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::String(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Render records as CSV; the header is the JSON key order.
pub fn records_to_csv<T: Serialize>(records: &[T]) -> serde_json::Result<String> {
    let mut out = String::new();
    for (i, record) in records.iter().enumerate() {
        let Value::Object(map) = serde_json::to_value(record)? else {
            return Err(serde::ser::Error::custom("CSV rows must be JSON objects"));
        };
        if i == 0 {
            out.push_str(&map.keys().cloned().collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out.push_str(&map.values().map(csv_cell).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    Ok(out)
}
