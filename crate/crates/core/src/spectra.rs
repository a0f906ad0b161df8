// Copyright 2026 The qmix Authors
// SPDX-License-Identifier: Apache-2.0

//! Harmonic extraction from steady-state trajectories.
//!
//! `S_n` is the average of `⟨σ₋⟩(t) e^{+inδωt}` over a window spanning a whole
//! number of beat periods `2π/δω`. On such a window the harmonics are
//! orthogonal, so no taper is applied.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{Read, Write};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::model::{QubitParams, ScenarioKind, Trajectory};
use crate::multiphoton::{self, ProcessDescriptor};

/// Shortest window accepted by [`extract_component`], in beat periods.
pub const MIN_WINDOW_PERIODS: usize = 5;
/// A peak counts as present only above this multiple of the floor.
pub const FLOOR_MARGIN: f64 = 10.0;
/// ... and above this fraction of the largest peak.
pub const ABSENCE_REL: f64 = 1e-6;

#[derive(Debug, thiserror::Error)]
pub enum SpectraError {
    #[error("window [{t_start}, {t_end}] is not aligned: {reason}")]
    Misaligned { t_start: f64, t_end: f64, reason: String },
    #[error("index sets differ: numeric-only {numeric_only:?}, oracle-only {oracle_only:?}")]
    IndexMismatch { numeric_only: Vec<i32>, oracle_only: Vec<i32> },
    #[error("tables use different delta_w ({0} vs {1})")]
    BeatMismatch(f64, f64),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed spectrum file: {0}")]
    Malformed(String),
}

/// Harmonic amplitudes `n ↦ S_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub delta_w: f64,
    pub entries: BTreeMap<i32, C64>,
    /// Extraction window; `None` for closed-form tables.
    pub window: Option<(f64, f64)>,
    /// Noise-floor estimate, zero for closed-form tables.
    pub floor: f64,
}

impl SpectrumTable {
    pub fn analytic(delta_w: f64, entries: BTreeMap<i32, C64>) -> Self {
        SpectrumTable { delta_w, entries, window: None, floor: 0.0 }
    }

    pub fn get(&self, n: i32) -> Option<C64> {
        self.entries.get(&n).copied()
    }

    pub fn abs(&self, n: i32) -> f64 {
        self.get(n).map_or(0.0, |s| s.norm())
    }

    pub fn indices(&self) -> BTreeSet<i32> {
        self.entries.keys().copied().collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.values().map(|s| s.norm()).fold(0.0, f64::max)
    }

    /// Level a peak must exceed to count as present.
    pub fn threshold(&self) -> f64 {
        (FLOOR_MARGIN * self.floor).max(ABSENCE_REL * self.max_abs())
    }

    pub fn above_floor(&self, n: i32) -> bool {
        self.abs(n) > self.threshold()
    }

    pub fn present(&self) -> BTreeSet<i32> {
        self.entries.keys().copied().filter(|&n| self.above_floor(n)).collect()
    }

    /// `Σ S_n e^{−inδωt}`.
    pub fn evaluate(&self, t: f64) -> C64 {
        self.entries.iter().map(|(&n, &s)| s * C64::from_polar(1.0, -(n as f64) * self.delta_w * t)).sum()
    }

    /// Same table over exactly `indices`, zero where this one has no entry.
    pub fn padded_to(&self, indices: &BTreeSet<i32>) -> SpectrumTable {
        let entries = indices.iter().map(|&n| (n, self.get(n).unwrap_or_default())).collect();
        SpectrumTable { entries, ..self.clone() }
    }
}

/// Sample range `[start, start + len]` (inclusive end) on a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub start: usize,
    /// Number of sampling intervals; the window holds `len + 1` samples.
    pub len: usize,
    pub periods: usize,
}

impl Window {
    /// Resolves `(t_start, t_end)` against the trajectory grid and checks it
    /// covers a whole number (at least [`MIN_WINDOW_PERIODS`]) of beats.
    pub fn resolve(traj: &Trajectory, t_start: f64, t_end: f64) -> Result<Window, SpectraError> {
        let bad = |reason: String| SpectraError::Misaligned { t_start, t_end, reason };
        let per = traj
            .samples_per(traj.frame.beat_period())
            .ok_or_else(|| bad(format!("beat period is not a multiple of dt = {}", traj.dt)))?;
        let s = (t_start - traj.t0) / traj.dt;
        let e = (t_end - traj.t0) / traj.dt;
        let (si, ei) = (s.round(), e.round());
        if (s - si).abs() > 1e-6 || (e - ei).abs() > 1e-6 || si < 0.0 {
            return Err(bad("window edges are off the sample grid".into()));
        }
        let (start, end) = (si as usize, ei as usize);
        if end >= traj.len() || end <= start {
            return Err(bad(format!("window exceeds trajectory of {} samples", traj.len())));
        }
        let len = end - start;
        if len % per != 0 {
            return Err(bad(format!("{} samples is not a whole number of {per}-sample beats", len)));
        }
        let periods = len / per;
        if periods < MIN_WINDOW_PERIODS {
            return Err(bad(format!("{periods} beat periods < {MIN_WINDOW_PERIODS}")));
        }
        Ok(Window { start, len, periods })
    }

    /// Window of `periods` beats starting at sample `start`.
    pub fn from_start(traj: &Trajectory, start: usize, periods: usize) -> Result<Window, SpectraError> {
        let t_start = traj.time(start);
        Window::resolve(traj, t_start, t_start + periods as f64 * traj.frame.beat_period())
    }

    pub fn times(&self, traj: &Trajectory) -> (f64, f64) {
        (traj.time(self.start), traj.time(self.start + self.len))
    }
}

/// Composite-trapezoid estimates of `S_n` for every index in `ns`.
fn extract_many(traj: &Trajectory, ns: &[i32], w: &Window) -> Vec<C64> {
    let dw = traj.frame.delta_w;
    let top = ns.iter().map(|n| n.unsigned_abs()).max().unwrap_or(0) as usize;
    let mut acc = vec![C64::new(0.0, 0.0); ns.len()];
    let mut powers = vec![C64::new(1.0, 0.0); top + 1];
    for k in 0..=w.len {
        let i = w.start + k;
        let base = C64::from_polar(1.0, dw * traj.time(i));
        for p in 1..=top {
            powers[p] = powers[p - 1] * base;
        }
        let weight = if k == 0 || k == w.len { 0.5 } else { 1.0 };
        let sm = traj.samples[i].sm * weight;
        for (a, &n) in acc.iter_mut().zip(ns) {
            let p = powers[n.unsigned_abs() as usize];
            *a += sm * if n >= 0 { p } else { p.conj() };
        }
    }
    acc.into_iter().map(|a| a / w.len as f64).collect()
}

/// `S_n = (1/W) ∫ ⟨σ₋⟩ e^{+inδωt} dt` over the window.
pub fn extract_component(traj: &Trajectory, n: i32, window: (f64, f64)) -> Result<C64, SpectraError> {
    let w = Window::resolve(traj, window.0, window.1)?;
    Ok(extract_many(traj, &[n], &w)[0])
}

/// All `|n| ≤ n_max`, with the floor taken as the median amplitude over the
/// indices `kind` forbids.
pub fn spectrum_table(
    traj: &Trajectory,
    kind: ScenarioKind,
    n_max: u32,
    window: (f64, f64),
) -> Result<SpectrumTable, SpectraError> {
    let w = Window::resolve(traj, window.0, window.1)?;
    Ok(spectrum_table_in(traj, kind, n_max, &w))
}

pub fn spectrum_table_in(traj: &Trajectory, kind: ScenarioKind, n_max: u32, w: &Window) -> SpectrumTable {
    let top = n_max as i32;
    let ns: Vec<i32> = (-top..=top).collect();
    let values = extract_many(traj, &ns, w);
    let entries: BTreeMap<i32, C64> = ns.iter().copied().zip(values).collect();
    let allowed = multiphoton::allowed_indices(kind, n_max);
    let mut forbidden: Vec<f64> = entries.iter().filter(|(n, _)| !allowed.contains(n)).map(|(_, s)| s.norm()).collect();
    SpectrumTable { delta_w: traj.frame.delta_w, entries, window: Some(w.times(traj)), floor: median(&mut forbidden) }
}

fn median(v: &mut [f64]) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    v.sort_by(|a, b| a.total_cmp(b));
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

/// Scattered-field amplitude `−iΓ⟨σ₋⟩/μ`.
pub fn emitted_amplitude(s: C64, q: &QubitParams) -> C64 {
    C64::new(0.0, -q.gamma_rad) * s / q.dipole_scale
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeakEntry {
    pub n: i32,
    pub abs: f64,
    pub phase: f64,
    pub above_floor: bool,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_abs: Option<f64>,
    /// `|numeric − oracle|`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub descriptor: Option<ProcessDescriptor>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeakReport {
    pub scenario: Option<ScenarioKind>,
    pub delta_w: f64,
    pub floor: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config_hash: Option<String>,
    pub entries: Vec<PeakEntry>,
}

impl PeakReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PeakEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn max_delta(&self) -> f64 {
        self.entries.iter().filter_map(|e| e.delta).fold(0.0, f64::max)
    }

    fn sort(&mut self) {
        self.entries.sort_by_key(|e| (e.n.unsigned_abs(), e.n));
    }

    /// Selection-rule report: an entry passes when its presence matches what
    /// the multiphoton bookkeeping of `kind` predicts.
    pub fn selection_rule(table: &SpectrumTable, kind: ScenarioKind) -> PeakReport {
        let n_max = table.entries.keys().map(|n| n.unsigned_abs()).max().unwrap_or(0);
        let allowed = multiphoton::allowed_indices(kind, n_max);
        let mut rep = PeakReport {
            scenario: Some(kind),
            delta_w: table.delta_w,
            floor: table.floor,
            config_hash: None,
            entries: table
                .entries
                .iter()
                .map(|(&n, &s)| {
                    let above = table.above_floor(n);
                    let expected = allowed.contains(&n);
                    PeakEntry {
                        n,
                        abs: s.norm(),
                        phase: s.arg(),
                        above_floor: above,
                        pass: above == expected || (expected && table.max_abs() == 0.0),
                        oracle_abs: None,
                        delta: None,
                        descriptor: multiphoton::process_descriptor(kind, n).ok(),
                    }
                })
                .collect(),
        };
        rep.sort();
        rep
    }
}

/// What [`compare_tables`] measures the distance between.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Compare {
    /// Full complex amplitudes, phase included.
    #[default]
    Complex,
    /// `|S_n|` only.
    Magnitude,
}

impl std::str::FromStr for Compare {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "complex" => Ok(Compare::Complex),
            "magnitude" => Ok(Compare::Magnitude),
            _ => Err(format!("unknown comparison {s:?}; expected complex or magnitude")),
        }
    }
}

/// Per-index comparison; `n` passes iff `|num − ora| ≤ rel_tol·|ora| + abs_floor`,
/// with `|num| − |ora|` in place of the difference under [`Compare::Magnitude`].
pub fn compare_tables(
    numeric: &SpectrumTable,
    oracle: &SpectrumTable,
    mode: Compare,
    rel_tol: f64,
    abs_floor: f64,
) -> Result<PeakReport, SpectraError> {
    if (numeric.delta_w - oracle.delta_w).abs() > 1e-12 * numeric.delta_w.abs().max(1.0) {
        return Err(SpectraError::BeatMismatch(numeric.delta_w, oracle.delta_w));
    }
    let (a, b) = (numeric.indices(), oracle.indices());
    if a != b {
        return Err(SpectraError::IndexMismatch {
            numeric_only: a.difference(&b).copied().collect(),
            oracle_only: b.difference(&a).copied().collect(),
        });
    }
    let mut rep = PeakReport {
        scenario: None,
        delta_w: numeric.delta_w,
        floor: numeric.floor,
        config_hash: None,
        entries: numeric
            .entries
            .iter()
            .map(|(&n, &s)| {
                let o = oracle.entries[&n];
                let delta = match mode {
                    Compare::Complex => (s - o).norm(),
                    Compare::Magnitude => (s.norm() - o.norm()).abs(),
                };
                PeakEntry {
                    n,
                    abs: s.norm(),
                    phase: s.arg(),
                    above_floor: numeric.above_floor(n),
                    pass: delta <= rel_tol * o.norm() + abs_floor,
                    oracle_abs: Some(o.norm()),
                    delta: Some(delta),
                    descriptor: None,
                }
            })
            .collect(),
    };
    rep.sort();
    Ok(rep)
}

const HASH_PREFIX: &str = "# config_sha256=";

/// Spectrum CSV: a `# config_sha256=` line, then the header row
/// `n,freq_over_delta_w,re,im,abs,above_floor`.
pub fn write_spectrum_csv<W: Write>(mut out: W, table: &SpectrumTable, config_hash: &str) -> Result<(), SpectraError> {
    writeln!(out, "{HASH_PREFIX}{config_hash}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "freq_over_delta_w", "re", "im", "abs", "above_floor"])?;
    for (&n, s) in &table.entries {
        w.write_record([
            n.to_string(),
            n.to_string(),
            s.re.to_string(),
            s.im.to_string(),
            s.norm().to_string(),
            table.above_floor(n).to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a spectrum CSV back, returning the embedded config hash.
///
/// The floor is not stored in the file; the returned table has floor zero.
pub fn read_spectrum_csv<R: Read>(input: R, delta_w: f64) -> Result<(String, SpectrumTable), SpectraError> {
    let mut text = String::new();
    let mut input = input;
    input.read_to_string(&mut text)?;
    let (first, rest) = text.split_once('\n').ok_or_else(|| SpectraError::Malformed("empty file".into()))?;
    let hash = first
        .trim()
        .strip_prefix(HASH_PREFIX)
        .ok_or_else(|| SpectraError::Malformed("missing config hash line".into()))?
        .to_string();
    let mut r = csv::Reader::from_reader(rest.as_bytes());
    let mut entries = BTreeMap::new();
    for rec in r.records() {
        let rec = rec?;
        let field = |i: usize| -> Result<&str, SpectraError> {
            rec.get(i).ok_or_else(|| SpectraError::Malformed(format!("short row {rec:?}")))
        };
        let parse = |s: &str| -> Result<f64, SpectraError> {
            s.parse::<f64>().map_err(|e| SpectraError::Malformed(format!("{s}: {e}")))
        };
        let n: i32 = field(0)?.parse().map_err(|e| SpectraError::Malformed(format!("index: {e}")))?;
        entries.insert(n, C64::new(parse(field(2)?)?, parse(field(3)?)?));
    }
    Ok((hash, SpectrumTable::analytic(delta_w, entries)))
}

/// Trajectory CSV (`t,re_sm,im_sm,sz`), every `stride`-th sample.
pub fn write_trajectory_csv<W: Write>(
    mut out: W,
    traj: &Trajectory,
    stride: usize,
    time_scale: f64,
    config_hash: &str,
) -> Result<(), SpectraError> {
    writeln!(out, "{HASH_PREFIX}{config_hash}")?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "re_sm", "im_sm", "sz"])?;
    for (i, s) in traj.samples.iter().enumerate().step_by(stride.max(1)) {
        w.write_record([
            (traj.time(i) * time_scale).to_string(),
            s.sm.re.to_string(),
            s.sm.im.to_string(),
            s.sz.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
