//! Closed (or lower-open) intervals over non-negative engineering
//! quantities, and the "known range or explicitly unknown" wrapper used by
//! the switch catalog.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// `[min, max]`, or `(min, max]` when `min_open` is set. `max` may be +∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    min: f64,
    max: f64,
    min_open: bool,
}

impl Interval {
    pub fn new(min: f64, max: f64) -> Result<Self> {
        if min.is_nan() || max.is_nan() || min > max {
            return Err(Error::invalid("interval", format!("[{min}, {max}] is empty")));
        }
        Ok(Interval {
            min,
            max,
            min_open: false,
        })
    }

    pub fn point(value: f64) -> Self {
        Interval {
            min: value,
            max: value,
            min_open: false,
        }
    }

    /// `(0, max]`, an upper bound with nothing known below it.
    pub fn below(max: f64) -> Result<Self> {
        if !(max > 0.0) {
            return Err(Error::invalid(
                "interval",
                format!("upper bound {max} must be positive"),
            ));
        }
        Ok(Interval {
            min: 0.0,
            max,
            min_open: true,
        })
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn is_min_open(&self) -> bool {
        self.min_open
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.min_open { x > self.min } else { x >= self.min };
        above && x <= self.max
    }

    /// Multiply by a non-negative scalar.
    pub fn scale(&self, k: f64) -> Self {
        debug_assert!(k >= 0.0);
        if k == 0.0 {
            return Interval::point(0.0);
        }
        Interval {
            min: self.min * k,
            max: self.max * k,
            min_open: self.min_open,
        }
    }

    /// Product of two non-negative intervals.
    pub fn mul(&self, other: &Interval) -> Self {
        let min = self.min * other.min;
        let max = self.max * other.max;
        Interval {
            min,
            max: if max.is_nan() { f64::INFINITY } else { max },
            min_open: self.min_open || other.min_open,
        }
    }

    pub fn add(&self, other: &Interval) -> Self {
        Interval {
            min: self.min + other.min,
            max: self.max + other.max,
            min_open: self.min_open || other.min_open,
        }
    }

    /// Image under a strictly decreasing map on (0, ∞).
    pub(crate) fn map_decreasing(&self, f: impl Fn(f64) -> f64) -> Self {
        let upper = if self.min <= 0.0 { f64::INFINITY } else { f(self.min) };
        Interval {
            min: f(self.max),
            max: upper,
            min_open: false,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.min_open { "(" } else { "[" };
        write!(f, "{open}{}, {}]", self.min, self.max)
    }
}

#[derive(Serialize, Deserialize)]
struct IntervalRepr {
    #[serde(serialize_with = "crate::serialization::sig9")]
    min: f64,
    #[serde(serialize_with = "finite_or_null", deserialize_with = "null_as_infinity")]
    max: f64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    min_exclusive: bool,
}

fn finite_or_null<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        crate::serialization::sig9(v, s)
    } else {
        s.serialize_none()
    }
}

fn null_as_infinity<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IntervalRepr {
            min: self.min,
            max: self.max,
            min_exclusive: self.min_open,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = IntervalRepr::deserialize(d)?;
        let mut i = Interval::new(r.min, r.max).map_err(serde::de::Error::custom)?;
        i.min_open = r.min_exclusive;
        Ok(i)
    }
}

/// A quantity that is either a known range or explicitly unknown.
#[derive(Debug, Clone, PartialEq)]
pub enum Measure {
    Known(Interval),
    Unknown { reason: String },
}

impl Measure {
    pub fn unknown(reason: impl Into<String>) -> Self {
        Measure::Unknown { reason: reason.into() }
    }

    pub fn known(&self) -> Option<&Interval> {
        match self {
            Measure::Known(i) => Some(i),
            Measure::Unknown { .. } => None,
        }
    }

    pub fn map(&self, f: impl FnOnce(&Interval) -> Interval) -> Measure {
        match self {
            Measure::Known(i) => Measure::Known(f(i)),
            Measure::Unknown { reason } => Measure::Unknown { reason: reason.clone() },
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum MeasureRepr {
    Known(Interval),
    Unknown { value: Option<f64>, reason: String },
}

impl Serialize for Measure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Measure::Known(i) => MeasureRepr::Known(*i),
            Measure::Unknown { reason } => MeasureRepr::Unknown {
                value: None,
                reason: reason.clone(),
            },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Measure {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match MeasureRepr::deserialize(d)? {
            MeasureRepr::Known(i) => Ok(Measure::Known(i)),
            MeasureRepr::Unknown { value: None, reason } => Ok(Measure::Unknown { reason }),
            MeasureRepr::Unknown { value: Some(_), .. } => {
                Err(serde::de::Error::custom("an unknown quantity must carry a null value"))
            }
        }
    }
}
