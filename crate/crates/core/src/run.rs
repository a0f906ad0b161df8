// Copyright 2026 The qmix Authors
// SPDX-License-Identifier: Apache-2.0

//! Orchestration: planning a run, simulating, comparing with the closed
//! forms, and parameter sweeps. The `qmix` binary is a thin shell over this.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{self, AnalyticError};
use crate::config::{ComplexValue, Config, ConfigError, RunSettings};
use crate::dynamics::{integrate_grid, steady_state_detect, Equations, Grid, IntegrateError, SteadyError};
use crate::model::{
    validate_config, BlochState, FrameConfig, QubitParams, Scenario, ScenarioKind, Trajectory, TwoTone,
    ValidationReport,
};
use crate::multiphoton;
use crate::spectra::{self, compare_tables, Compare, PeakReport, SpectraError, SpectrumTable, Window};

/// Environment variable capping the sweep worker pool.
pub const THREADS_ENV: &str = "QMIX_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Config(#[from] ConfigError),
    #[error("invalid configuration:\n{0}")]
    Invalid(ValidationReport),
    #[error("cannot plan run: {0}")]
    Plan(String),
    #[error("integration failed: {0}")]
    Integrate(#[from] IntegrateError),
    #[error("steady state: {0}")]
    Steady(#[from] SteadyError),
    #[error("spectrum: {0}")]
    Spectra(#[from] SpectraError),
    #[error("no analytic oracle: {0}")]
    NoOracle(String),
    #[error("{} of {} harmonics differ from the oracle", .0.failures().count(), .0.entries.len())]
    Comparison(Box<PeakReport>),
    #[error("spectrum file belongs to config {found}, not {expected}")]
    HashMismatch { expected: String, found: String },
    #[error("{0} sweep points failed")]
    SweepFailures(usize),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl RunError {
    /// 2 bad input, 3 integration or analysis failure, 4 no oracle,
    /// 5 oracle mismatch, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) | RunError::Invalid(_) | RunError::Plan(_) | RunError::HashMismatch { .. } => 2,
            RunError::Integrate(_) | RunError::Steady(_) | RunError::Spectra(_) | RunError::SweepFailures(_) => 3,
            RunError::NoOracle(_) => 4,
            RunError::Comparison(_) => 5,
            RunError::Io(_) | RunError::Json(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            RunError::Config(_) => "config",
            RunError::Invalid(_) => "validation",
            RunError::Plan(_) => "plan",
            RunError::Integrate(_) => "integration",
            RunError::Steady(_) => "steady_state",
            RunError::Spectra(_) => "spectrum",
            RunError::NoOracle(_) => "no_oracle",
            RunError::Comparison(_) => "comparison",
            RunError::HashMismatch { .. } => "hash_mismatch",
            RunError::SweepFailures(_) => "sweep",
            RunError::Io(_) => "io",
            RunError::Json(_) => "json",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "error": self.kind(),
            "exit_code": self.exit_code(),
            "message": self.to_string(),
        })
    }
}

/// Integration grid and analysis window chosen for a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Plan {
    pub qubit: QubitParams,
    pub frame: FrameConfig,
    pub scenario: Scenario,
    /// `δω` before any commensurability adjustment.
    pub delta_w_requested: f64,
    pub dt: f64,
    pub steps_per_beat: usize,
    pub stride: usize,
    pub settle_beats: usize,
    pub window_beats: usize,
    pub n_max: u32,
}

impl Plan {
    pub fn steps(&self) -> usize {
        (self.settle_beats + self.window_beats) * self.steps_per_beat
    }

    pub fn t_end(&self) -> f64 {
        self.steps() as f64 * self.dt
    }

    pub fn grid(&self) -> Grid {
        Grid { t0: 0.0, dt: self.dt, steps: self.steps(), stride: self.stride }
    }
}

/// Largest step allowed by accuracy on `Γ`, on the beat, and on stiffness.
pub fn default_dt(eq: &Equations) -> f64 {
    let q = &eq.qubit;
    (0.01 / q.gamma_rad).min(TAU / (200.0 * eq.frame.delta_w)).min(1.0 / (20.0 * eq.stiffness()))
}

/// Largest `s ≤ steps / min_samples` dividing `steps` with `steps / s`
/// divisible by `multiple`.
fn choose_stride(steps: usize, min_samples: usize, multiple: usize, must_divide: usize) -> usize {
    let top = (steps / min_samples).max(1);
    (1..=top)
        .rev()
        .find(|&s| steps.is_multiple_of(s) && (steps / s).is_multiple_of(multiple) && must_divide.is_multiple_of(s))
        .unwrap_or(1)
}

/// Picks `dt`, stride and, for the Fock case, a commensurate `δω`.
///
/// The beat period always spans a multiple of 4 steps. For the Fock case it
/// spans a whole number of pulse periods, each a whole number of steps.
pub fn plan(q: &QubitParams, f: &FrameConfig, s: &Scenario, settings: &RunSettings) -> Result<Plan, RunError> {
    let report = validate_config(q, f, s);
    if !report.is_ok() {
        return Err(RunError::Invalid(report));
    }
    settings.check()?;
    let mut frame = *f;
    let delta_w_requested = f.delta_w;
    let (dt, steps_per_beat, stride);
    if let Scenario::Fock(fk) = s {
        let ratio = f.beat_period() / fk.period;
        let pulses = ratio.round();
        if (ratio - pulses).abs() > 1e-9 * ratio && !settings.commensurate {
            return Err(RunError::Plan(format!(
                "beat period spans {ratio} pulse periods; spectra need a whole number (set run.commensurate = true)"
            )));
        }
        let pulses = pulses.max(1.0);
        frame.delta_w = TAU / (pulses * fk.period);
        let eq = Equations::for_scenario(s, q, &frame);
        let dt_max = settings.dt.map_or(default_dt(&eq), |d| d.min(default_dt(&eq)));
        let per_pulse = (fk.period / dt_max * (1.0 - 1e-12)).ceil() as usize;
        dt = fk.period / per_pulse as f64;
        steps_per_beat = per_pulse * pulses as usize;
        stride = choose_stride(steps_per_beat, settings.samples_per_beat, 1, per_pulse);
    } else {
        let eq = Equations::for_scenario(s, q, &frame);
        let dt_max = settings.dt.map_or(default_dt(&eq), |d| d.min(default_dt(&eq)));
        let quarter = (frame.beat_period() / (4.0 * dt_max) * (1.0 - 1e-12)).ceil() as usize;
        steps_per_beat = 4 * quarter;
        dt = frame.beat_period() / steps_per_beat as f64;
        stride = choose_stride(steps_per_beat, settings.samples_per_beat, 4, steps_per_beat);
    }
    Ok(Plan {
        qubit: *q,
        frame,
        scenario: *s,
        delta_w_requested,
        dt,
        steps_per_beat,
        stride,
        settle_beats: settings.settle_beats,
        window_beats: settings.window_beats,
        n_max: settings.n_max,
    })
}

/// Everything a run produces, in units of `Γ`.
#[derive(Debug, Clone)]
pub struct SimOutput {
    pub plan: Plan,
    pub trajectory: Trajectory,
    /// First sample of the periodic regime.
    pub steady_index: usize,
    pub window: Window,
    pub spectrum: SpectrumTable,
    pub selection: PeakReport,
}

impl SimOutput {
    pub fn kind(&self) -> ScenarioKind {
        self.plan.scenario.kind()
    }
}

/// Integrates from the ground state, discards the transient and extracts
/// the harmonics over `window_beats` beats.
pub fn simulate(q: &QubitParams, f: &FrameConfig, s: &Scenario, settings: &RunSettings) -> Result<SimOutput, RunError> {
    let plan = plan(q, f, s, settings)?;
    simulate_plan(&plan, settings.steady_tol)
}

pub fn simulate_plan(plan: &Plan, steady_tol: f64) -> Result<SimOutput, RunError> {
    let eq = Equations::for_scenario(&plan.scenario, &plan.qubit, &plan.frame);
    let trajectory = integrate_grid(&eq, BlochState::GROUND, plan.grid())?;
    let beat = plan.frame.beat_period();
    let steady_index = steady_state_detect(&trajectory, beat, steady_tol)?;
    let window = Window::from_start(&trajectory, steady_index, plan.window_beats)
        .map_err(|_| SteadyError::NotReached { t: trajectory.time(steady_index), mismatch: steady_tol })?;
    let kind = plan.scenario.kind();
    let spectrum = spectra::spectrum_table_in(&trajectory, kind, plan.n_max, &window);
    let selection = PeakReport::selection_rule(&spectrum, kind);
    Ok(SimOutput { plan: *plan, trajectory, steady_index, window, spectrum, selection })
}

/// Closed-form harmonics for the scenario, zero at every index the closed
/// form does not populate.
pub fn oracle_table(q: &QubitParams, f: &FrameConfig, s: &Scenario, n_max: u32) -> Result<SpectrumTable, RunError> {
    let top = n_max as i32;
    let mut entries: BTreeMap<i32, C64> = (-top..=top).map(|n| (n, C64::default())).collect();
    let no = |e: AnalyticError| RunError::NoOracle(e.to_string());
    match s {
        Scenario::TwoTone(tt) => {
            if tt.omega1 * tt.omega2 > 0.0 {
                let table = analytic::two_tone_spectrum(tt, q, f, n_max / 2 + 1).map_err(no)?;
                for (n, v) in table.entries {
                    if let Some(e) = entries.get_mut(&n) {
                        *e = v;
                    }
                }
            } else {
                let b = analytic::two_tone_steady(0.0, tt, q, f);
                let n = if tt.omega2 > 0.0 { -1 } else { 1 };
                entries.insert(n, b.sm);
            }
        }
        Scenario::Squeezed(sq) => {
            let table = analytic::squeezed_spectrum(sq, q, f, n_max).map_err(no)?;
            let allowed = multiphoton::allowed_indices(ScenarioKind::Squeezed, n_max);
            for (n, v) in table.entries {
                if allowed.contains(&n) {
                    entries.insert(n, v);
                }
            }
        }
        Scenario::Fock(fk) => {
            let c = analytic::fock_coeffs(fk, q, f).map_err(no)?;
            entries.insert(-1, c.averaged.c1);
            entries.insert(1, analytic::single_drive_steady(fk.omega1, q, f, 0.0).sm);
            if n_max >= 3 {
                entries.insert(3, c.averaged.cm3);
            }
        }
    }
    Ok(SpectrumTable::analytic(f.delta_w, entries))
}

/// Compares a numeric table with the oracle. The absolute floor is
/// `abs_floor_rel · max |S_n|` unless `abs_floor` is given.
#[allow(clippy::too_many_arguments)]
pub fn compare_with_oracle(
    numeric: &SpectrumTable,
    q: &QubitParams,
    f: &FrameConfig,
    s: &Scenario,
    mode: Compare,
    rel_tol: f64,
    abs_floor_rel: f64,
    abs_floor: Option<f64>,
) -> Result<PeakReport, RunError> {
    let n_max = numeric.entries.keys().map(|n| n.unsigned_abs()).max().unwrap_or(1);
    let oracle = oracle_table(q, f, s, n_max)?.padded_to(&numeric.indices());
    let floor = abs_floor.unwrap_or(abs_floor_rel * numeric.max_abs());
    let mut rep = compare_tables(numeric, &oracle, mode, rel_tol, floor)?;
    rep.scenario = Some(s.kind());
    for e in &mut rep.entries {
        e.descriptor = multiphoton::process_descriptor(s.kind(), e.n).ok();
    }
    Ok(rep)
}

/// Provenance written next to every set of outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub config_path: Option<String>,
    pub config_hash: String,
    pub scenario: ScenarioKind,
    pub dt: f64,
    pub t_end: f64,
    pub window: (f64, f64),
    pub steps_per_beat: usize,
    pub stride: usize,
    pub delta_w_requested: f64,
    pub delta_w_used: f64,
    pub outputs: Vec<String>,
    /// No random numbers are drawn anywhere.
    pub deterministic: bool,
    /// Seconds since the Unix epoch; the only field that differs between
    /// identical runs.
    pub created_unix: u64,
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), RunError> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    std::io::Write::write_all(&mut w, b"\n")?;
    Ok(())
}

/// Plots `spectrum.csv` as impulses on a log scale; run from the output
/// directory with `gnuplot -p spectrum.gp`.
const GNUPLOT_SPECTRUM: &str = "\
set datafile separator ','
set logscale y
set xlabel '(omega - omega_d) / delta_w'
set ylabel '|S_n|'
set key off
plot 'spectrum.csv' skip 2 using 2:5 with impulses lw 3
";

/// `simulate` outputs, in the units of the config.
#[derive(Debug)]
pub struct SimulateFiles {
    pub output: SimOutput,
    pub manifest: RunManifest,
}

/// Runs a config and writes `trajectory.csv`, `spectrum.csv`, `peaks.json`
/// and `manifest.json` into `out`.
pub fn cmd_simulate(config: &Config, config_path: Option<&Path>, out: &Path) -> Result<SimulateFiles, RunError> {
    let r = config.resolve()?;
    let output = simulate(&r.qubit, &r.frame, &r.scenario, &r.run)?;
    let hash = config.hash();
    std::fs::create_dir_all(out)?;
    let mut files = vec!["trajectory.csv", "spectrum.csv", "peaks.json", "manifest.json"];
    if r.run.gnuplot {
        files.push("spectrum.gp");
    }
    let path = |i: usize| out.join(files[i]);

    let traj = &output.trajectory;
    let stride = traj.len().div_ceil(r.run.trajectory_rows.max(1)).max(1);
    spectra::write_trajectory_csv(
        BufWriter::new(File::create(path(0))?),
        traj,
        stride,
        1.0 / r.units.rate_scale,
        &hash,
    )?;
    let mut spectrum = output.spectrum.clone();
    spectrum.delta_w = r.units.rate_out(spectrum.delta_w);
    spectra::write_spectrum_csv(BufWriter::new(File::create(path(1))?), &spectrum, &hash)?;
    let mut peaks = output.selection.clone();
    peaks.delta_w = spectrum.delta_w;
    peaks.config_hash = Some(hash.clone());
    write_json(&path(2), &peaks)?;
    if r.run.gnuplot {
        std::fs::write(path(4), GNUPLOT_SPECTRUM)?;
    }

    let (w0, w1) = output.window.times(traj);
    let manifest = RunManifest {
        config_path: config_path.map(|p| p.display().to_string()),
        config_hash: hash,
        scenario: r.scenario.kind(),
        dt: r.units.time_out(output.plan.dt),
        t_end: r.units.time_out(output.plan.t_end()),
        window: (r.units.time_out(w0), r.units.time_out(w1)),
        steps_per_beat: output.plan.steps_per_beat,
        stride: output.plan.stride,
        delta_w_requested: r.units.rate_out(output.plan.delta_w_requested),
        delta_w_used: r.units.rate_out(output.plan.frame.delta_w),
        outputs: files.iter().map(|f| out.join(f).display().to_string()).collect(),
        deterministic: true,
        created_unix: std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map_or(0, |d| d.as_secs()),
    };
    write_json(&path(3), &manifest)?;
    Ok(SimulateFiles { output, manifest })
}

/// Options of the `validate` command.
#[derive(Debug, Clone, Default)]
pub struct ValidateOptions {
    pub rel_tol: Option<f64>,
    pub abs_floor: Option<f64>,
    pub compare: Option<Compare>,
    /// Compare this spectrum file instead of simulating again.
    pub spectrum: Option<PathBuf>,
}

/// Compares the numeric spectrum with the closed-form oracle. Returns the
/// report on success and [`RunError::Comparison`] when any index fails.
pub fn cmd_validate(config: &Config, opts: &ValidateOptions) -> Result<PeakReport, RunError> {
    let r = config.resolve()?;
    let hash = config.hash();
    let rel_tol = opts.rel_tol.unwrap_or(r.run.rel_tol);
    let check_frame = match r.scenario {
        Scenario::Fock(_) => plan(&r.qubit, &r.frame, &r.scenario, &r.run)?.frame,
        _ => r.frame,
    };
    // refuse early, before any integration, when no oracle exists
    oracle_table(&r.qubit, &check_frame, &r.scenario, 1)?;
    let (numeric, frame) = match &opts.spectrum {
        Some(path) => {
            let file = File::open(path)?;
            let (found, mut table) = spectra::read_spectrum_csv(file, r.units.rate_out(check_frame.delta_w))?;
            if found != hash {
                return Err(RunError::HashMismatch { expected: hash, found });
            }
            table.delta_w = check_frame.delta_w;
            (table, check_frame)
        }
        None => {
            let out = simulate(&r.qubit, &r.frame, &r.scenario, &r.run)?;
            (out.spectrum, out.plan.frame)
        }
    };
    let mode = opts.compare.unwrap_or(r.run.compare);
    let mut rep = compare_with_oracle(
        &numeric,
        &r.qubit,
        &frame,
        &r.scenario,
        mode,
        rel_tol,
        r.run.abs_floor_rel,
        opts.abs_floor,
    )?;
    rep.config_hash = Some(hash);
    rep.delta_w = r.units.rate_out(rep.delta_w);
    if rep.all_pass() {
        Ok(rep)
    } else {
        Err(RunError::Comparison(Box::new(rep)))
    }
}

/// Parameters that `sweep` can vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Omega1,
    Nu,
    NBath,
    MBath,
    DeltaW,
    Period,
}

impl std::str::FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "omega1" => Axis::Omega1,
            "nu" => Axis::Nu,
            "n_bath" => Axis::NBath,
            "m_bath" => Axis::MBath,
            "delta_w" => Axis::DeltaW,
            "period" => Axis::Period,
            _ => return Err(format!("unknown axis {s:?}; expected omega1, nu, n_bath, m_bath, delta_w or period")),
        })
    }
}

impl Axis {
    /// `config` with this parameter set to `v`.
    pub fn apply(&self, config: &Config, v: f64) -> Result<Config, RunError> {
        let mut c = config.clone();
        let sc = &mut c.scenario;
        let kind = sc.kind.clone();
        let slot = match self {
            Axis::Omega1 => Some(&mut sc.omega1),
            Axis::Nu => (kind == "fock").then_some(&mut sc.nu),
            Axis::NBath => (kind == "squeezed").then_some(&mut sc.n_bath),
            Axis::Period => (kind == "fock").then_some(&mut sc.period),
            Axis::MBath => {
                if kind != "squeezed" {
                    return Err(RunError::Plan(format!("axis m_bath does not apply to {kind}")));
                }
                sc.m_bath = Some(ComplexValue::Real(v));
                return Ok(c);
            }
            Axis::DeltaW => {
                c.frame.delta_w = v;
                return Ok(c);
            }
        };
        match slot {
            Some(slot) => {
                *slot = Some(v);
                Ok(c)
            }
            None => Err(RunError::Plan(format!("axis {self:?} does not apply to {kind}"))),
        }
    }
}

/// Parses `a,b,c`, `linspace:start:stop:count` or `logspace:start:stop:count`
/// (end points inclusive, given as values, not exponents).
pub fn parse_values(spec: &str) -> Result<Vec<f64>, String> {
    let num = |s: &str| s.trim().parse::<f64>().map_err(|e| format!("{s:?}: {e}"));
    let parts: Vec<&str> = spec.split(':').collect();
    let values = match parts.as_slice() {
        [mode @ ("linspace" | "logspace"), a, b, n] => {
            let (a, b) = (num(a)?, num(b)?);
            let n: usize = n.trim().parse().map_err(|e| format!("count {n:?}: {e}"))?;
            if n < 2 {
                return Err("ranges need at least 2 points".into());
            }
            if *mode == "logspace" && !(a > 0.0 && b > 0.0) {
                return Err("logspace end points must be positive".into());
            }
            (0..n)
                .map(|i| {
                    let x = i as f64 / (n - 1) as f64;
                    if *mode == "linspace" {
                        a + (b - a) * x
                    } else {
                        (a.ln() + (b.ln() - a.ln()) * x).exp()
                    }
                })
                .collect()
        }
        [list] => list.split(',').map(num).collect::<Result<Vec<_>, _>>()?,
        _ => return Err(format!("cannot parse values {spec:?}")),
    };
    if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
        return Err(format!("no finite values in {spec:?}"));
    }
    Ok(values)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        points.iter().filter(|(x, y)| *x > 0.0 && *y > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepFit {
    pub n: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted: Option<u32>,
    /// Axis value at which `|S_n|` is largest.
    pub argmax: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepFailure {
    pub value: f64,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub axis: Axis,
    pub config_hash: String,
    pub scenario: ScenarioKind,
    /// `(value, spectrum)` for each successful point, sorted by value.
    #[serde(skip)]
    pub points: Vec<(f64, SpectrumTable)>,
    pub failures: Vec<SweepFailure>,
    pub fits: Vec<SweepFit>,
    /// Largest `4|sm|² + sz² − 1` over every successful point.
    pub max_purity_excess: f64,
}

impl SweepResult {
    pub fn fit(&self, n: i32) -> Option<&SweepFit> {
        self.fits.iter().find(|f| f.n == n)
    }

    pub fn series(&self, n: i32) -> Vec<(f64, f64)> {
        self.points.iter().map(|(v, t)| (*v, t.abs(n))).collect()
    }
}

fn pool() -> rayon::ThreadPool {
    let threads = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()).unwrap_or(0);
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool")
}

/// One simulation per value, run concurrently.
pub fn sweep(config: &Config, axis: Axis, values: &[f64]) -> Result<SweepResult, RunError> {
    let base = config.resolve()?;
    let kind = base.scenario.kind();
    let configs: Vec<(f64, Result<Config, RunError>)> = values.iter().map(|&v| (v, axis.apply(config, v))).collect();
    // (value, (purity excess, spectrum))
    type Point = (f64, Result<(f64, SpectrumTable), RunError>);
    let results: Vec<Point> = pool().install(|| {
        configs
            .into_par_iter()
            .map(|(v, c)| {
                let out = c.and_then(|c| {
                    let r = c.resolve()?;
                    simulate(&r.qubit, &r.frame, &r.scenario, &r.run)
                        .map(|o| (o.trajectory.max_purity_excess, o.spectrum))
                });
                (v, out)
            })
            .collect()
    });
    let mut points = Vec::new();
    let mut failures = Vec::new();
    let mut max_purity_excess = f64::NEG_INFINITY;
    for (v, r) in results {
        match r {
            Ok((excess, t)) => {
                max_purity_excess = max_purity_excess.max(excess);
                points.push((v, t));
            }
            Err(e) => failures.push(SweepFailure { value: v, error: e.to_string() }),
        }
    }
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    failures.sort_by(|a, b| a.value.total_cmp(&b.value));
    let fits = multiphoton::allowed_indices(kind, base.run.n_max)
        .into_iter()
        .filter(|_| !points.is_empty())
        .map(|n| {
            let series: Vec<(f64, f64)> = points.iter().map(|(v, t)| (*v, t.abs(n))).collect();
            let argmax = series.iter().fold((f64::NAN, -1.0), |b, p| if p.1 > b.1 { *p } else { b }).0;
            let positive = values.iter().all(|v| *v > 0.0);
            SweepFit {
                n,
                slope: if positive { loglog_slope(&series) } else { None },
                predicted: (axis == Axis::Omega1)
                    .then(|| multiphoton::predicted_scaling(kind, n).ok().map(|s| s.omega1_net))
                    .flatten(),
                argmax,
            }
        })
        .collect();
    Ok(SweepResult { axis, config_hash: config.hash(), scenario: kind, points, failures, fits, max_purity_excess })
}

/// Runs [`sweep`] and writes `sweep.csv` (`value,n,abs_s_n`) and
/// `fits.json` into `out`.
pub fn cmd_sweep(config: &Config, axis: Axis, values: &[f64], out: &Path) -> Result<SweepResult, RunError> {
    let res = sweep(config, axis, values)?;
    std::fs::create_dir_all(out)?;
    let mut f = BufWriter::new(File::create(out.join("sweep.csv"))?);
    std::io::Write::write_all(&mut f, format!("# config_sha256={}\n", res.config_hash).as_bytes())?;
    let mut w = csv::Writer::from_writer(f);
    w.write_record(["value", "n", "abs_s_n"]).map_err(SpectraError::from)?;
    for (v, t) in &res.points {
        for (n, s) in &t.entries {
            w.write_record([v.to_string(), n.to_string(), s.norm().to_string()]).map_err(SpectraError::from)?;
        }
    }
    w.flush()?;
    write_json(&out.join("fits.json"), &res)?;
    if res.failures.is_empty() {
        Ok(res)
    } else {
        Err(RunError::SweepFailures(res.failures.len()))
    }
}

/// Two-tone configuration with equal weak drives, used by examples and tests.
pub fn fig1_two_tone() -> (QubitParams, FrameConfig, Scenario) {
    (
        QubitParams::radiative(),
        FrameConfig { delta_w: 0.002, big_delta: 0.0 },
        Scenario::TwoTone(TwoTone { omega1: 0.15, omega2: 0.15 }),
    )
}
