use std::fs;
use std::io::Write;
use std::path::Path;

use log::{debug, info};
use serde::Serialize;

use ris_core::aperture::{
    pattern_to_csv, peak_direction, quantize_profile, radiation_pattern, squint_bandwidth_analytic,
    squint_bandwidth_numeric, synthesize_profile,
};
use ris_core::catalog::{compare_technologies, merge_catalog, TechnologyProjection};
use ris_core::link::{required_panel_side, switch_count};
use ris_core::serialization::{records_to_csv, sig9};
use ris_core::{
    build_grid, builtin_catalog, evaluate_scenario, BandwidthMethod, Frequency, PhaseResolution, ReportRecord,
    ScenarioSpec, SteeringTarget, SwitchTechnology,
};

use crate::config::{Format, MethodName, PowerConfig, RunConfig, SweepParameter};
use crate::render::{csv_field, measure_cells, num, pretty_json};
use crate::{CliError, Command};

/// Command output: one document, or named files for a directory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rendered {
    Document(String),
    Files(Vec<(String, String)>),
}

impl Rendered {
    /// Documents go to `out` or stdout; files need `out` as a directory.
    pub fn write(&self, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), CliError> {
        let io = |p: &Path, e: std::io::Error| CliError::Io(format!("{}: {e}", p.display()));
        match (self, out) {
            (Rendered::Document(text), None) => stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(format!("stdout: {e}"))),
            (Rendered::Document(text), Some(path)) => fs::write(path, text).map_err(|e| io(path, e)),
            (Rendered::Files(_), None) => Err(CliError::field(
                "output.path",
                "per-pattern CSV output needs a directory (--out or output.path)",
            )),
            (Rendered::Files(files), Some(dir)) => {
                fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
                for (name, text) in files {
                    let path = dir.join(name);
                    fs::write(&path, text).map_err(|e| io(&path, e))?;
                    info!("wrote {}", path.display());
                }
                Ok(())
            }
        }
    }
}

pub fn execute(
    command: Command,
    config: Option<&RunConfig>,
    base_dir: &Path,
    format: Option<Format>,
    method: Option<MethodName>,
) -> Result<Rendered, CliError> {
    let format = format.or_else(|| config.and_then(RunConfig::output_format));
    let Some(cfg) = config else {
        return techs(None, base_dir, format.unwrap_or(Format::Json));
    };
    match command {
        Command::Report => {
            let method = method.or(cfg.bandwidth_method).unwrap_or(MethodName::Numeric);
            report(cfg, method.method(), format.unwrap_or(Format::Json))
        }
        Command::Pattern => pattern(cfg, format.unwrap_or(Format::Csv)),
        Command::Squint => squint(cfg, format.unwrap_or(Format::Csv)),
        Command::Power => power(cfg, base_dir, format.unwrap_or(Format::Json)),
        Command::Techs => techs(cfg.power.as_ref(), base_dir, format.unwrap_or(Format::Json)),
    }
}

fn scenario_specs(cfg: &RunConfig) -> Result<Vec<(usize, ScenarioSpec)>, CliError> {
    if cfg.scenario.is_empty() {
        return Err(CliError::field("scenario", "at least one scenario is required"));
    }
    let mut out = Vec::new();
    for (i, sc) in cfg.scenario.iter().enumerate() {
        out.extend(sc.specs(i)?.into_iter().map(|s| (i, s)));
    }
    Ok(out)
}

fn report(cfg: &RunConfig, method: BandwidthMethod, format: Format) -> Result<Rendered, CliError> {
    let mut specs = scenario_specs(cfg)?;
    let sweep = match &cfg.sweep {
        Some(axis) => {
            axis.validate(SweepParameter::REPORT, "report")?;
            if axis.parameter == SweepParameter::ThetaMaxDeg {
                // the sweep replaces each scenario's angle list
                specs.dedup_by_key(|(i, _)| *i);
            }
            Some(axis)
        }
        None => None,
    };

    let mut records = Vec::new();
    for (i, base) in specs {
        let values: Vec<Option<f64>> = match sweep {
            Some(axis) => axis.values().into_iter().map(Some).collect(),
            None => vec![None],
        };
        for v in values {
            let mut s = base.clone();
            if let (Some(axis), Some(v)) = (sweep, v) {
                axis.parameter.apply(&mut s, v)?;
                s.validate()
                    .map_err(|e| CliError::within(&format!("scenario[{i}] at {} = {v}", axis.parameter), e))?;
            }
            info!(
                "evaluating {:?} at theta_max {} deg ({method})",
                s.name, s.theta_max_deg
            );
            let r = evaluate_scenario(&s, method).map_err(|e| {
                CliError::within(
                    &format!("scenario[{i}] {:?} theta_max {} deg", s.name, s.theta_max_deg),
                    e,
                )
            })?;
            records.push(ReportRecord::from(&r));
        }
    }
    Ok(Rendered::Document(match format {
        Format::Json => pretty_json(&records),
        Format::Csv => records_to_csv(&records).map_err(|e| CliError::Io(e.to_string()))?,
    }))
}

#[derive(Serialize)]
struct PatternSampleOut {
    #[serde(serialize_with = "sig9")]
    theta_deg: f64,
    #[serde(serialize_with = "sig9")]
    gain_db: f64,
}

#[derive(Serialize)]
struct PatternOut {
    resolution: String,
    #[serde(serialize_with = "sig9")]
    frequency_ghz: f64,
    #[serde(serialize_with = "sig9")]
    phi_cut_deg: f64,
    #[serde(serialize_with = "sig9")]
    peak_theta_deg: f64,
    #[serde(serialize_with = "sig9")]
    peak_gain_db: f64,
    samples: Vec<PatternSampleOut>,
}

fn pattern(cfg: &RunConfig, format: Format) -> Result<Rendered, CliError> {
    let pc = cfg
        .pattern
        .as_ref()
        .ok_or_else(|| CliError::field("pattern", "section is required for pattern"))?;
    if pc.resolutions.is_empty() {
        return Err(CliError::field(
            "pattern.resolutions",
            "at least one phase resolution is required",
        ));
    }
    pc.theta_grid.validate().map_err(|e| CliError::within("pattern", e))?;
    let frequencies: Vec<Frequency> = match &cfg.sweep {
        Some(_) if !pc.frequencies_hz.is_empty() => {
            return Err(CliError::field(
                "sweep",
                "give either a frequency sweep or pattern.frequencies_hz",
            ));
        }
        Some(axis) => {
            axis.validate(SweepParameter::PATTERN, "pattern")?;
            axis.values()
                .into_iter()
                .map(|v| Frequency::new(v).map_err(|e| CliError::within("sweep", e)))
                .collect::<Result<_, _>>()?
        }
        None if pc.frequencies_hz.is_empty() => vec![pc.frequency_hz],
        None => pc.frequencies_hz.clone(),
    };

    let design = pc.aperture.design(pc.frequency_hz, "pattern.aperture")?;
    let target = pc.target()?;
    let thetas = pc.theta_grid.values();
    let continuous = synthesize_profile(&design, &target).map_err(|e| CliError::within("pattern", e))?;
    info!(
        "{}x{} cells, {:.3} mm side, steering to {} deg",
        design.cells_per_side(),
        design.cells_per_side(),
        design.side() * 1e3,
        pc.steer.theta_deg
    );

    let mut files = Vec::new();
    let mut docs = Vec::new();
    for &res in &pc.resolutions {
        let profile = match res {
            PhaseResolution::Continuous => continuous.clone(),
            PhaseResolution::Bits(b) => quantize_profile(&continuous, b).map_err(|e| CliError::within("pattern", e))?,
        };
        let aperture = design
            .clone()
            .with_phase_resolution(res)
            .map_err(|e| CliError::within("pattern", e))?;
        for &f in &frequencies {
            let pat = radiation_pattern(&aperture, &profile, f, &target, pc.phi_cut_deg, &thetas)
                .map_err(|e| CliError::within("pattern", e))?;
            let peak = peak_direction(&pat).map_err(|e| CliError::within("pattern", e))?;
            debug!(
                "{res} at {} GHz: peak {:.3} deg, {:.3} dB",
                f.ghz(),
                peak.theta_deg,
                peak.gain_db
            );
            match format {
                Format::Csv => files.push((format!("pattern_{res}_{}ghz.csv", num(f.ghz())), pattern_to_csv(&pat))),
                Format::Json => docs.push(PatternOut {
                    resolution: res.to_string(),
                    frequency_ghz: f.ghz(),
                    phi_cut_deg: pc.phi_cut_deg,
                    peak_theta_deg: peak.theta_deg,
                    peak_gain_db: peak.gain_db,
                    samples: pat
                        .samples()
                        .iter()
                        .map(|s| PatternSampleOut {
                            theta_deg: s.theta_deg,
                            gain_db: s.gain_db,
                        })
                        .collect(),
                }),
            }
        }
    }
    Ok(match format {
        Format::Csv => Rendered::Files(files),
        Format::Json => Rendered::Document(pretty_json(&docs)),
    })
}

#[derive(Serialize)]
struct SquintRow {
    parameter: &'static str,
    #[serde(serialize_with = "sig9")]
    value: f64,
    #[serde(serialize_with = "sig9")]
    panel_side_mm: f64,
    cells_per_side: usize,
    #[serde(serialize_with = "sig9")]
    theta_deg: f64,
    /// `None` when steering is specular and the bandwidth is unbounded.
    numeric_bandwidth_ghz: Option<f64>,
    analytic_bandwidth_ghz: Option<f64>,
}

fn squint(cfg: &RunConfig, format: Format) -> Result<Rendered, CliError> {
    let sc = cfg
        .squint
        .as_ref()
        .ok_or_else(|| CliError::field("squint", "section is required for squint"))?;
    let axis = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::field("sweep", "squint needs a panel_side_mm or theta_deg sweep"))?;
    axis.validate(SweepParameter::SQUINT, "squint")?;
    sc.resolution.validate().map_err(|e| CliError::within("squint", e))?;

    let f0 = sc.frequency_hz;
    let mut rows = Vec::new();
    for v in axis.values() {
        let (side_mm, theta) = match axis.parameter {
            SweepParameter::PanelSideMm => (v, sc.theta_deg),
            _ => (sc.panel_side_mm, v),
        };
        let at = format!("squint at {} = {v}", axis.parameter);
        let design = build_grid(side_mm * 1e-3, f0)
            .and_then(|d| d.with_phase_resolution(sc.resolution))
            .map_err(|e| CliError::within(&at, e))?;
        let target = SteeringTarget::normal_to(theta).map_err(|e| CliError::within(&at, e))?;
        let numeric = squint_bandwidth_numeric(&design, &target, f0).map_err(|e| CliError::within(&at, e))?;
        let analytic = if theta == 0.0 {
            None
        } else {
            Some(squint_bandwidth_analytic(design.side(), theta, f0, sc.beta).map_err(|e| CliError::within(&at, e))?)
        };
        info!("{at}: numeric {:?}, analytic {:?}", numeric.hz(), analytic);
        rows.push(SquintRow {
            parameter: axis.parameter.name(),
            value: v,
            panel_side_mm: design.side() * 1e3,
            cells_per_side: design.cells_per_side(),
            theta_deg: theta,
            numeric_bandwidth_ghz: numeric.hz().map(|b| round9(b * 1e-9)),
            analytic_bandwidth_ghz: analytic.map(|b| round9(b * 1e-9)),
        });
    }

    Ok(Rendered::Document(match format {
        Format::Json => pretty_json(&rows),
        Format::Csv => {
            let mut out = format!(
                "requested_{},panel_side_mm,cells_per_side,theta_deg,numeric_bandwidth_ghz,analytic_bandwidth_ghz\n",
                axis.parameter
            );
            let ghz = |b: Option<f64>| b.map_or("inf".to_string(), num);
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    num(r.value),
                    num(r.panel_side_mm),
                    r.cells_per_side,
                    num(r.theta_deg),
                    ghz(r.numeric_bandwidth_ghz),
                    ghz(r.analytic_bandwidth_ghz)
                ));
            }
            out
        }
    }))
}

fn round9(x: f64) -> f64 {
    ris_core::serialization::round_sig9(x)
}

fn load_catalog(power: Option<&PowerConfig>, base_dir: &Path) -> Result<Vec<SwitchTechnology>, CliError> {
    let base = builtin_catalog();
    let Some(rel) = power.and_then(|p| p.catalog.as_ref()) else {
        return Ok(base);
    };
    let path = base_dir.join(rel);
    let text = fs::read_to_string(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let user: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::field("power.catalog", format!("{}: {e}", path.display())))?;
    merge_catalog(&base, &user).map_err(|e| CliError::within("power.catalog", e))
}

#[derive(Serialize)]
struct PowerGroup {
    source: String,
    switch_count: u64,
    technologies: Vec<TechnologyProjection>,
}

fn derived_switch_count(s: &ScenarioSpec) -> Result<u64, ris_core::Error> {
    let grid = build_grid(required_panel_side(s)?, s.frequency_hz)?;
    Ok(switch_count(
        grid.cells_per_side() as u64,
        s.phase_bits,
        s.switches_per_bit,
    ))
}

fn power(cfg: &RunConfig, base_dir: &Path, format: Format) -> Result<Rendered, CliError> {
    let defaults = PowerConfig {
        switch_count: None,
        on_fraction: 1.0,
        catalog: None,
    };
    let pc = cfg.power.as_ref().unwrap_or(&defaults);
    if !(0.0..=1.0).contains(&pc.on_fraction) {
        return Err(CliError::field(
            "power.on_fraction",
            format!("{} must lie in [0, 1]", pc.on_fraction),
        ));
    }
    let catalog = load_catalog(Some(pc), base_dir)?;

    let counts: Vec<(String, u64)> = match pc.switch_count {
        Some(n) => vec![("power.switch_count".to_string(), n)],
        None if cfg.scenario.is_empty() => {
            return Err(CliError::field(
                "power.switch_count",
                "give a count or a scenario to derive it from",
            ));
        }
        None => scenario_specs(cfg)?
            .into_iter()
            .map(|(i, s)| {
                let n = derived_switch_count(&s).map_err(|e| CliError::within(&format!("scenario[{i}]"), e))?;
                Ok((format!("{} theta_max {} deg", s.name, num(s.theta_max_deg)), n))
            })
            .collect::<Result<_, CliError>>()?,
    };

    let mut groups = Vec::new();
    for (source, n) in counts {
        info!("{source}: {n} switches");
        let technologies =
            compare_technologies(&catalog, n, pc.on_fraction).map_err(|e| CliError::within("power", e))?;
        groups.push(PowerGroup {
            source,
            switch_count: n,
            technologies,
        });
    }

    Ok(Rendered::Document(match format {
        Format::Json => pretty_json(&groups),
        Format::Csv => {
            let mut out = String::from(
                "source,name,switch_count,on_fraction,static_power_w_min,static_power_w_max,\
                 reconfiguration_energy_j_min,reconfiguration_energy_j_max,\
                 cutoff_frequency_hz_min,cutoff_frequency_hz_max,trl_min,trl_max\n",
            );
            for g in &groups {
                for t in &g.technologies {
                    let [p0, p1] = measure_cells(&t.static_power_w);
                    let [e0, e1] = measure_cells(&t.reconfiguration_energy_j);
                    let [c0, c1] = measure_cells(&t.cutoff_frequency_hz);
                    out.push_str(&format!(
                        "{},{},{},{},{p0},{p1},{e0},{e1},{c0},{c1},{},{}\n",
                        csv_field(&g.source),
                        csv_field(&t.name),
                        t.switch_count,
                        num(t.on_fraction),
                        t.trl.min,
                        t.trl.max
                    ));
                }
            }
            out
        }
    }))
}

fn techs(power: Option<&PowerConfig>, base_dir: &Path, format: Format) -> Result<Rendered, CliError> {
    let catalog = load_catalog(power, base_dir)?;
    Ok(Rendered::Document(match format {
        Format::Json => pretty_json(&catalog),
        Format::Csv => {
            let mut out = String::from(
                "name,max_demonstrated_freq_hz,ron_coff_s_min,ron_coff_s_max,dc_dissipation_w_min,\
                 dc_dissipation_w_max,switching_energy_j_min,switching_energy_j_max,trl_min,trl_max,\
                 switch_size,cmos_integration\n",
            );
            for t in &catalog {
                let [r0, r1] = measure_cells(&t.ron_coff_s);
                let [d0, d1] = measure_cells(&t.dc_dissipation_w);
                let [e0, e1] = measure_cells(&t.switching_energy_j);
                out.push_str(&format!(
                    "{},{},{r0},{r1},{d0},{d1},{e0},{e1},{},{},{},{}\n",
                    csv_field(&t.name),
                    num(t.max_demonstrated_freq_hz),
                    t.trl.min,
                    t.trl.max,
                    t.switch_size.value(),
                    t.cmos_integration.value()
                ));
            }
            out
        }
    }))
}
