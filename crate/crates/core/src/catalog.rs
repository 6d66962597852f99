//! RF switch technologies for sub-THz panels: figures of merit, static
//! dissipation and reconfiguration energy at panel scale.
//!
//! Ranged table entries are intervals. Entries the source leaves blank or
//! marks "TBD" are [`Measure::Unknown`], never zero.

use std::cmp::Ordering;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::interval::{Interval, Measure};
use crate::serialization::sig9;

/// Technology readiness level range, 1–9.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrlRange {
    pub min: u8,
    pub max: u8,
}

impl TrlRange {
    pub fn new(min: u8, max: u8) -> Result<Self> {
        let r = TrlRange { min, max };
        r.validate()?;
        Ok(r)
    }

    pub fn level(level: u8) -> Result<Self> {
        Self::new(level, level)
    }

    fn validate(&self) -> Result<()> {
        if !(1..=9).contains(&self.min) || !(1..=9).contains(&self.max) || self.min > self.max {
            return Err(Error::invalid(
                "trl",
                format!("{}-{} is not a range within 1-9", self.min, self.max),
            ));
        }
        Ok(())
    }
}

/// Ordinal score, 1 (`+`) to 3 (`+++`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Score(u8);

impl Score {
    pub fn new(v: u8) -> Result<Self> {
        if (1..=3).contains(&v) {
            Ok(Score(v))
        } else {
            Err(Error::invalid("score", format!("{v} must lie in 1..=3")))
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl TryFrom<u8> for Score {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        Score::new(v)
    }
}

impl From<Score> for u8 {
    fn from(s: Score) -> u8 {
        s.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SwitchTechnology {
    pub name: String,
    #[serde(serialize_with = "sig9")]
    pub max_demonstrated_freq_hz: f64,
    pub ron_coff_s: Measure,
    /// Static dissipation per switch while held in a state, watts.
    pub dc_dissipation_w: Measure,
    /// Energy per state change, joules.
    pub switching_energy_j: Measure,
    pub trl: TrlRange,
    pub switch_size: Score,
    pub cmos_integration: Score,
}

impl SwitchTechnology {
    pub fn validate(&self) -> Result<()> {
        let field = |f: &str| format!("{}.{f}", self.name);
        if self.name.trim().is_empty() {
            return Err(Error::invalid("name", "must not be empty"));
        }
        if !(self.max_demonstrated_freq_hz > 0.0 && self.max_demonstrated_freq_hz.is_finite()) {
            return Err(Error::invalid(field("max_demonstrated_freq_hz"), "must be positive"));
        }
        if let Some(r) = self.ron_coff_s.known() {
            if !(r.max() > 0.0) || r.min() < 0.0 || (r.min() == 0.0 && !r.is_min_open()) {
                return Err(Error::invalid(field("ron_coff_s"), format!("{r} must be positive")));
            }
        }
        for (f, m) in [
            ("dc_dissipation_w", &self.dc_dissipation_w),
            ("switching_energy_j", &self.switching_energy_j),
        ] {
            if let Some(r) = m.known() {
                if r.min() < 0.0 {
                    return Err(Error::invalid(field(f), format!("{r} must be non-negative")));
                }
            }
        }
        self.trl.validate()
    }

    /// F_C = 1/(2π·Ron·Coff) over the RonCoff range.
    pub fn cutoff_frequency(&self) -> Measure {
        self.ron_coff_s.map(|r| r.map_decreasing(|x| 1.0 / (2.0 * PI * x)))
    }
}

fn known(min: f64, max: f64) -> Measure {
    Measure::Known(Interval::new(min, max).expect("catalog ranges are ordered"))
}

fn exact(v: f64) -> Measure {
    Measure::Known(Interval::point(v))
}

const BLANK_ENERGY: &str = "not listed: switching energy is only given where DC dissipation is negligible";

/// The six technologies of the sub-THz switch comparison.
pub fn builtin_catalog() -> Vec<SwitchTechnology> {
    let score = |v| Score::new(v).expect("static score");
    let trl = |a, b| TrlRange::new(a, b).expect("static trl");
    vec![
        SwitchTechnology {
            name: "RF-SOI".into(),
            max_demonstrated_freq_hz: 220e9,
            ron_coff_s: exact(90e-15),
            dc_dissipation_w: known(0.05e-3, 0.1e-3),
            switching_energy_j: Measure::unknown(BLANK_ENERGY),
            trl: trl(9, 9),
            switch_size: score(2),
            cmos_integration: score(3),
        },
        SwitchTechnology {
            name: "BiCMOS".into(),
            max_demonstrated_freq_hz: 133e9,
            ron_coff_s: exact(80e-15),
            dc_dissipation_w: known(10e-3, 50e-3),
            switching_energy_j: Measure::unknown(BLANK_ENERGY),
            trl: trl(8, 8),
            switch_size: score(2),
            cmos_integration: score(3),
        },
        SwitchTechnology {
            name: "GaN-on-Si".into(),
            max_demonstrated_freq_hz: 40e9,
            ron_coff_s: exact(55e-15),
            dc_dissipation_w: known(0.1e-3, 1e-3),
            switching_energy_j: Measure::unknown(BLANK_ENERGY),
            trl: trl(6, 6),
            switch_size: score(1),
            cmos_integration: score(2),
        },
        SwitchTechnology {
            name: "Microfluidics".into(),
            max_demonstrated_freq_hz: 123e9,
            ron_coff_s: Measure::unknown("TBD"),
            dc_dissipation_w: exact(0.001e-3),
            switching_energy_j: exact(20e-9),
            trl: trl(1, 3),
            switch_size: score(1),
            cmos_integration: score(1),
        },
        SwitchTechnology {
            name: "Memristors".into(),
            max_demonstrated_freq_hz: 480e9,
            ron_coff_s: Measure::Known(Interval::below(10e-15).expect("positive bound")),
            dc_dissipation_w: exact(0.0),
            switching_energy_j: known(1e-9, 10e-9),
            trl: trl(2, 2),
            switch_size: score(3),
            cmos_integration: score(1),
        },
        SwitchTechnology {
            name: "PCM".into(),
            max_demonstrated_freq_hz: 67e9,
            ron_coff_s: Measure::Known(Interval::below(10e-15).expect("positive bound")),
            dc_dissipation_w: exact(0.0),
            switching_energy_j: known(1e-9, 500e-9),
            trl: trl(4, 4),
            switch_size: score(3),
            cmos_integration: score(2),
        },
    ]
}

/// F_C = 1/(2π·RonCoff), RonCoff in seconds.
pub fn cutoff_frequency(ron_coff_s: f64) -> Result<f64> {
    if !(ron_coff_s > 0.0 && ron_coff_s.is_finite()) {
        return Err(Error::domain("RonCoff", format!("{ron_coff_s} s must be positive")));
    }
    Ok(1.0 / (2.0 * PI * ron_coff_s))
}

/// Panel static dissipation with `on_fraction` of the switches drawing DC.
pub fn static_power(switch_count: u64, tech: &SwitchTechnology, on_fraction: f64) -> Result<Measure> {
    if !(0.0..=1.0).contains(&on_fraction) {
        return Err(Error::domain(
            "on fraction",
            format!("{on_fraction} must lie in [0, 1]"),
        ));
    }
    let k = switch_count as f64 * on_fraction;
    if k == 0.0 {
        return Ok(Measure::Known(Interval::point(0.0)));
    }
    Ok(tech.dc_dissipation_w.map(|r| r.scale(k)))
}

/// Worst-case energy to reconfigure the whole panel: every switch toggles.
/// An empty panel costs nothing even when the per-switch figure is unknown.
pub fn reconfiguration_energy(switch_count: u64, tech: &SwitchTechnology) -> Measure {
    if switch_count == 0 {
        return Measure::Known(Interval::point(0.0));
    }
    tech.switching_energy_j.map(|r| r.scale(switch_count as f64))
}

/// Which end of a TRL range a filter compares against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TrlBound {
    #[default]
    Optimistic,
    Conservative,
}

/// Technologies whose readiness reaches `min_trl`, judged on `bound`.
pub fn filter_by_trl(catalog: &[SwitchTechnology], min_trl: u8, bound: TrlBound) -> Vec<&SwitchTechnology> {
    catalog
        .iter()
        .filter(|t| match bound {
            TrlBound::Optimistic => t.trl.max >= min_trl,
            TrlBound::Conservative => t.trl.min >= min_trl,
        })
        .collect()
}

/// Overlay user records onto `base`. Records match by name; fields the
/// user gives replace the built-in ones, new names are appended.
pub fn merge_catalog(base: &[SwitchTechnology], user: &Value) -> Result<Vec<SwitchTechnology>> {
    let entries = user
        .as_array()
        .ok_or_else(|| Error::invalid("catalog", "expected a JSON array of technologies"))?;
    let mut merged: Vec<Value> = base
        .iter()
        .map(|t| serde_json::to_value(t).expect("catalog records serialize"))
        .collect();
    for (i, entry) in entries.iter().enumerate() {
        let overlay = entry
            .as_object()
            .ok_or_else(|| Error::invalid(format!("catalog[{i}]"), "expected an object"))?;
        let name = overlay
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::invalid(format!("catalog[{i}].name"), "missing technology name"))?;
        match merged.iter_mut().find(|v| v["name"] == name) {
            Some(Value::Object(existing)) => {
                for (k, v) in overlay {
                    existing.insert(k.clone(), v.clone());
                }
            }
            _ => merged.push(entry.clone()),
        }
    }
    merged
        .into_iter()
        .map(|v| {
            let name = v["name"].as_str().unwrap_or("?").to_string();
            let tech: SwitchTechnology = serde_json::from_value(v)
                .map_err(|e| Error::invalid(format!("catalog entry {name}"), e.to_string()))?;
            tech.validate()?;
            Ok(tech)
        })
        .collect()
}

/// Panel-level power and energy projection for one technology.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TechnologyProjection {
    pub name: String,
    pub switch_count: u64,
    #[serde(serialize_with = "sig9")]
    pub on_fraction: f64,
    pub static_power_w: Measure,
    pub reconfiguration_energy_j: Measure,
    pub cutoff_frequency_hz: Measure,
    pub trl: TrlRange,
}

/// Project every technology onto a panel of `switch_count` switches,
/// sorted by static power ascending (unknowns last, ties keep catalog order).
pub fn compare_technologies(
    catalog: &[SwitchTechnology],
    switch_count: u64,
    on_fraction: f64,
) -> Result<Vec<TechnologyProjection>> {
    let mut rows = catalog
        .iter()
        .map(|t| {
            Ok(TechnologyProjection {
                name: t.name.clone(),
                switch_count,
                on_fraction,
                static_power_w: static_power(switch_count, t, on_fraction)?,
                reconfiguration_energy_j: reconfiguration_energy(switch_count, t),
                cutoff_frequency_hz: t.cutoff_frequency(),
                trl: t.trl,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| match (a.static_power_w.known(), b.static_power_w.known()) {
        (Some(x), Some(y)) => x.min().total_cmp(&y.min()).then(x.max().total_cmp(&y.max())),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    });
    Ok(rows)
}
