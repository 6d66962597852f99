//! Text formatting shared by the CSV writers.

use ris_core::serialization::round_sig9;
use ris_core::Measure;

/// Nine significant digits; exponent form for very small or large values.
pub fn num(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round_sig9(x);
    let a = r.abs();
    if a != 0.0 && !(1e-4..1e15).contains(&a) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

/// `min,max` cells; both empty when unknown.
pub fn measure_cells(m: &Measure) -> [String; 2] {
    match m.known() {
        Some(i) => [num(i.min()), num(i.max())],
        None => [String::new(), String::new()],
    }
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn pretty_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("output serializes") + "\n"
}
