#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ris_cli::{execute, Format, MethodName, Rendered, RunConfig};

pub fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn preset(name: &str) -> PathBuf {
    repo_root().join("presets").join(name)
}

pub fn load(name: &str) -> RunConfig {
    RunConfig::load(&preset(name)).unwrap()
}

pub fn run(command: ris_cli::Command, cfg: &RunConfig, format: Option<Format>, method: Option<MethodName>) -> Rendered {
    execute(command, Some(cfg), &repo_root().join("presets"), format, method).unwrap()
}

pub fn document(r: Rendered) -> String {
    match r {
        Rendered::Document(s) => s,
        Rendered::Files(_) => panic!("expected a single document"),
    }
}

pub fn files(r: Rendered) -> Vec<(String, String)> {
    match r {
        Rendered::Files(f) => f,
        Rendered::Document(_) => panic!("expected files"),
    }
}

pub fn risplan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_risplan"))
        .args(args)
        .env("RISPLAN_LOG", "error")
        .output()
        .unwrap()
}

/// Write `json` to a temp config file and run the binary on it.
pub fn risplan_with(subcommand: &str, json: &str, extra: &[&str]) -> Output {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("config.json");
    std::fs::write(&path, json).unwrap();
    let mut args = vec![subcommand, "--config", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    risplan(&args)
}

/// Parse a `theta_deg,gain_db` CSV.
pub fn parse_pattern(csv: &str) -> Vec<(f64, f64)> {
    csv.lines()
        .skip(1)
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect()
}

pub fn gain_near(samples: &[(f64, f64)], theta: f64) -> f64 {
    samples
        .iter()
        .min_by(|a, b| (a.0 - theta).abs().total_cmp(&(b.0 - theta).abs()))
        .unwrap()
        .1
}

pub const OUTDOOR_SCENARIO: &str = r#"{
    "name": "outdoor",
    "frequency_hz": 140e9,
    "d1_m": 50,
    "d2_m": 50,
    "total_antenna_gain_dbi": 56,
    "radiated_power_dbm": 20,
    "noise_density_dbm_per_hz": -174,
    "noise_figure_db": 5,
    "target_received_power_dbm": -59,
    "reference_bandwidth_hz": 10e9,
    "phase_bits": 2,
    "theta_max_deg": THETA
}"#;

pub fn scenario_config(theta: &str, rest: &str) -> String {
    format!(
        r#"{{"schema": "risplan.config/v1", "scenario": {}{rest}}}"#,
        OUTDOOR_SCENARIO.replace("THETA", theta)
    )
}
