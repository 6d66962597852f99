mod common;

use serde_json::Value;

use common::*;
use ris_cli::{Command, Format, RunConfig};

#[test]
fn fig3_preset_writes_four_patterns_with_a_one_bit_mirror_lobe() {
    let out = files(run(Command::Pattern, &load("fig3.json"), None, None));
    let names: Vec<&str> = out.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(
        names,
        [
            "pattern_1bit_140ghz.csv",
            "pattern_2bit_140ghz.csv",
            "pattern_3bit_140ghz.csv",
            "pattern_continuous_140ghz.csv"
        ]
    );
    let mirror_rel = |csv: &str| {
        let s = parse_pattern(csv);
        gain_near(&s, -45.0) - gain_near(&s, 45.0)
    };
    let rel: Vec<f64> = out.iter().map(|(_, csv)| mirror_rel(csv)).collect();
    assert!(rel[0] > -1.0, "1 bit mirror at {} dB", rel[0]);
    for (name, r) in names.iter().zip(&rel).skip(1) {
        assert!(*r < -10.0, "{name}: mirror at {r} dB");
    }
    assert!(out[0].1.starts_with("theta_deg,gain_db\n"));
    assert_eq!(out[0].1.lines().count(), 358);
}

#[test]
fn fig4_sweep_follows_the_squint_law() {
    let out = files(run(Command::Pattern, &load("fig4.json"), None, None));
    assert_eq!(out.len(), 5);
    let (f0, side) = (30e9, 30.0 * 299_792_458.0 / 30e9 / 2.0);
    for (i, (name, csv)) in out.iter().enumerate() {
        let f = 28e9 + 1e9 * i as f64;
        assert!(name.contains(&format!("_{}ghz", 28 + i)), "{name}");
        // 1-bit patterns are mirror symmetric: look on the design side
        let s: Vec<_> = parse_pattern(csv).into_iter().filter(|p| p.0 > 0.0).collect();
        let peak = s.iter().max_by(|a, b| a.1.total_cmp(&b.1)).unwrap().0;
        let predicted = 45f64.to_radians().sin() * f0 / f;
        let half_beam = 299_792_458.0 / f / side;
        let err = (peak.to_radians().sin() - predicted).abs();
        assert!(err <= half_beam, "{name}: peak {peak} deg");
    }
}

#[test]
fn pattern_json_carries_peaks() {
    let text = document(run(Command::Pattern, &load("fig3.json"), Some(Format::Json), None));
    let docs: Vec<Value> = serde_json::from_str(&text).unwrap();
    assert_eq!(docs.len(), 4);
    assert_eq!(docs[3]["resolution"], "continuous");
    let peak = docs[3]["peak_theta_deg"].as_f64().unwrap();
    assert!((peak - 45.0).abs() < 0.5, "{peak}");
    assert_eq!(docs[0]["samples"].as_array().unwrap().len(), 357);
}

#[test]
fn pattern_output_is_byte_identical_and_written_to_a_directory() {
    let cfg = load("fig3.json");
    assert_eq!(
        run(Command::Pattern, &cfg, None, None),
        run(Command::Pattern, &cfg, None, None)
    );
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("fig3");
    let out = risplan(&[
        "pattern",
        "--config",
        preset("fig3.json").to_str().unwrap(),
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(std::fs::read_dir(&target).unwrap().count(), 4);
}

const PATTERN_BASE: &str = r#"{
  "schema": "risplan.config/v1",
  "pattern": {
    "frequency_hz": 30e9,
    "aperture": { "cells_per_side": 8 },
    "steer": { "theta_deg": 30 },
    "resolutions": [1],
    "theta_grid": { "start_deg": -80, "stop_deg": 80, "steps": STEPS }
  }SWEEP
}"#;

fn pattern_config(steps: &str, sweep: &str) -> String {
    PATTERN_BASE.replace("STEPS", steps).replace("SWEEP", sweep)
}

#[test]
fn empty_angle_grid_is_a_validation_error() {
    let out = risplan_with("pattern", &pattern_config("0", ""), &["--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("theta_grid.steps"));
}

#[test]
fn single_point_sweep_is_a_validation_error() {
    let sweep = r#", "sweep": {"parameter": "frequency_hz", "start": 29e9, "stop": 31e9, "steps": 1}"#;
    let out = risplan_with("pattern", &pattern_config("11", sweep), &["--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sweep.steps"));
}

#[test]
fn pattern_csv_without_a_directory_is_rejected() {
    let out = risplan_with("pattern", &pattern_config("11", ""), &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("output.path"));
}

fn squint_rows(name: &str) -> Vec<Vec<String>> {
    let text = document(run(Command::Squint, &load(name), None, None));
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn side_sweep_is_monotone_with_table_endpoints() {
    let rows = squint_rows("squint_side.json");
    let col = |i: usize| -> Vec<f64> { rows.iter().map(|r| r[i].parse().unwrap()).collect() };
    let (numeric, analytic) = (col(4), col(5));
    for w in numeric.windows(2).chain(analytic.windows(2)) {
        assert!(w[1] < w[0], "{w:?}");
    }
    let (first, last) = (analytic[0], *analytic.last().unwrap());
    assert!((first / 12.0 - 1.0).abs() <= 0.10, "{first}");
    assert!((last / 2.3 - 1.0).abs() <= 0.10, "{last}");
    assert!((numeric[0] / 12.0 - 1.0).abs() <= 0.25, "{}", numeric[0]);
    assert!((numeric.last().unwrap() / 2.3 - 1.0).abs() <= 0.25);
}

#[test]
fn angle_sweep_decreases_with_angle() {
    let rows = squint_rows("squint_angle.json");
    let numeric: Vec<f64> = rows.iter().map(|r| r[4].parse().unwrap()).collect();
    let analytic: Vec<f64> = rows.iter().map(|r| r[5].parse().unwrap()).collect();
    for w in numeric.windows(2).chain(analytic.windows(2)) {
        assert!(w[1] < w[0], "{w:?}");
    }
}

#[test]
fn broadside_squint_is_unbounded() {
    let json = r#"{
      "schema": "risplan.config/v1",
      "squint": { "frequency_hz": 140e9, "panel_side_mm": 50, "theta_deg": 0 },
      "sweep": { "parameter": "theta_deg", "start": 0, "stop": 20, "steps": 2 }
    }"#;
    let cfg = RunConfig::from_json(json).unwrap();
    let csv = document(run(Command::Squint, &cfg, None, None));
    let first = csv.lines().nth(1).unwrap();
    assert!(first.ends_with(",inf,inf"), "{first}");
    let js: Vec<Value> = serde_json::from_str(&document(run(Command::Squint, &cfg, Some(Format::Json), None))).unwrap();
    assert!(js[0]["numeric_bandwidth_ghz"].is_null());
    assert!(js[1]["numeric_bandwidth_ghz"].as_f64().unwrap() > 0.0);
}

#[test]
fn squint_requires_a_sweep() {
    let json = r#"{
      "schema": "risplan.config/v1",
      "squint": { "frequency_hz": 140e9, "panel_side_mm": 50, "theta_deg": 50 }
    }"#;
    let out = risplan_with("squint", json, &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sweep"));
}

#[test]
fn unbracketed_squint_search_exits_with_solver_code() {
    let json = r#"{
      "schema": "risplan.config/v1",
      "squint": { "frequency_hz": 140e9, "panel_side_mm": 2.2, "theta_deg": 50 },
      "sweep": { "parameter": "panel_side_mm", "start": 2.1, "stop": 2.2, "steps": 2 }
    }"#;
    let out = risplan_with("squint", json, &[]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not bracketed"));
}
