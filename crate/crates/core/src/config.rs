// Copyright 2026 The qmix Authors
// SPDX-License-Identifier: Apache-2.0

//! TOML run configuration.
//!
//! ```toml
//! [qubit]
//! gamma_rad = 1.0
//! gamma_phi = 0.0
//!
//! [frame]
//! delta_w = 0.002
//! big_delta = 0.0
//!
//! [scenario]
//! kind = "squeezed"
//! omega1 = 0.15
//! n_bath = 2.0
//! m_bath = 2.449489742783178   # or [re, im]
//!
//! [run]                       # optional
//! window_beats = 10
//! ```
//!
//! Unknown keys are rejected. Rates may be given in any unit; they are
//! rescaled so that `gamma_rad = 1` before anything is integrated.

use std::path::Path;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::model::{EnvelopeMode, FockSource, FrameConfig, QubitParams, Scenario, SqueezedBath, TwoTone, Units};
use crate::spectra::Compare;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Parse(#[from] toml::de::Error),
    #[error("scenario kind {kind}: {message}")]
    Scenario { kind: String, message: String },
    #[error("{0}")]
    Model(#[from] crate::model::ModelError),
    #[error("run settings: {0}")]
    Run(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QubitSection {
    #[serde(default = "one")]
    pub gamma_rad: f64,
    #[serde(default)]
    pub gamma_phi: f64,
    #[serde(default = "one")]
    pub dipole_scale: f64,
}

impl Default for QubitSection {
    fn default() -> Self {
        QubitSection { gamma_rad: 1.0, gamma_phi: 0.0, dipole_scale: 1.0 }
    }
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameSection {
    pub delta_w: f64,
    #[serde(default)]
    pub big_delta: f64,
}

/// `M` as a real number or `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexValue {
    Real(f64),
    Pair([f64; 2]),
}

impl ComplexValue {
    pub fn value(&self) -> C64 {
        match *self {
            ComplexValue::Real(r) => C64::new(r, 0.0),
            ComplexValue::Pair([re, im]) => C64::new(re, im),
        }
    }
}

impl From<C64> for ComplexValue {
    fn from(z: C64) -> Self {
        if z.im == 0.0 {
            ComplexValue::Real(z.re)
        } else {
            ComplexValue::Pair([z.re, z.im])
        }
    }
}

/// Flat `[scenario]` table; which keys are allowed depends on `kind`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSection {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_bath: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_bath: Option<ComplexValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_e: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub envelope_mode: Option<EnvelopeMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step_cutoff: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub literal_sign: Option<bool>,
}

impl ScenarioSection {
    pub fn from_scenario(s: &Scenario) -> Self {
        match *s {
            Scenario::TwoTone(t) => ScenarioSection {
                kind: "two_tone".into(),
                omega1: Some(t.omega1),
                omega2: Some(t.omega2),
                ..Default::default()
            },
            Scenario::Squeezed(b) => ScenarioSection {
                kind: "squeezed".into(),
                omega1: Some(b.omega1),
                n_bath: Some(b.n_bath),
                m_bath: Some(b.m_bath.into()),
                ..Default::default()
            },
            Scenario::Fock(fk) => ScenarioSection {
                kind: "fock".into(),
                omega1: Some(fk.omega1),
                gamma_e: Some(fk.gamma_e),
                nu: Some(fk.nu),
                period: Some(fk.period),
                envelope_mode: Some(fk.envelope_mode),
                step_cutoff: fk.step_cutoff,
                literal_sign: Some(fk.literal_sign),
                ..Default::default()
            },
        }
    }

    pub fn to_scenario(&self) -> Result<Scenario, ConfigError> {
        let err = |message: String| ConfigError::Scenario { kind: self.kind.clone(), message };
        let present: Vec<&str> = [
            ("omega1", self.omega1.is_some()),
            ("omega2", self.omega2.is_some()),
            ("n_bath", self.n_bath.is_some()),
            ("m_bath", self.m_bath.is_some()),
            ("gamma_e", self.gamma_e.is_some()),
            ("nu", self.nu.is_some()),
            ("period", self.period.is_some()),
            ("envelope_mode", self.envelope_mode.is_some()),
            ("step_cutoff", self.step_cutoff.is_some()),
            ("literal_sign", self.literal_sign.is_some()),
        ]
        .into_iter()
        .filter_map(|(k, p)| p.then_some(k))
        .collect();
        let (allowed, required): (&[&str], &[&str]) = match self.kind.as_str() {
            "two_tone" => (&["omega1", "omega2"], &["omega1", "omega2"]),
            "squeezed" => (&["omega1", "n_bath", "m_bath"], &["omega1", "n_bath", "m_bath"]),
            "fock" => (
                &["omega1", "gamma_e", "nu", "period", "envelope_mode", "step_cutoff", "literal_sign"],
                &["omega1", "gamma_e", "nu", "period"],
            ),
            other => return Err(err(format!("unknown kind {other:?}; expected two_tone, squeezed or fock"))),
        };
        if let Some(k) = present.iter().find(|k| !allowed.contains(k)) {
            return Err(err(format!("unknown key {k:?}")));
        }
        if let Some(k) = required.iter().find(|k| !present.contains(k)) {
            return Err(err(format!("missing key {k:?}")));
        }
        let v = |x: Option<f64>| x.unwrap_or_default();
        Ok(match self.kind.as_str() {
            "two_tone" => Scenario::TwoTone(TwoTone { omega1: v(self.omega1), omega2: v(self.omega2) }),
            "squeezed" => Scenario::Squeezed(SqueezedBath {
                omega1: v(self.omega1),
                n_bath: v(self.n_bath),
                m_bath: self.m_bath.map(|m| m.value()).unwrap_or_default(),
            }),
            _ => Scenario::Fock(FockSource {
                omega1: v(self.omega1),
                gamma_e: v(self.gamma_e),
                nu: v(self.nu),
                period: v(self.period),
                envelope_mode: self.envelope_mode.unwrap_or_default(),
                step_cutoff: self.step_cutoff,
                literal_sign: self.literal_sign.unwrap_or(false),
            }),
        })
    }
}

/// Integrator and analysis settings, in the same units as the config rates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunSettings {
    /// Upper bound on the step; the planner may shorten it to fit periods.
    pub dt: Option<f64>,
    /// Beat periods discarded before the analysis window.
    pub settle_beats: usize,
    /// Beat periods in the analysis window.
    pub window_beats: usize,
    /// Largest `|n|` reported.
    pub n_max: u32,
    /// Minimum number of recorded samples per beat period.
    pub samples_per_beat: usize,
    /// Sup-norm tolerance for steady-state detection.
    pub steady_tol: f64,
    /// Fock case: shift `delta_w` so that the beat spans a whole number of
    /// pulse periods.
    pub commensurate: bool,
    /// Whether oracle comparison includes the phase.
    pub compare: Compare,
    /// Relative tolerance for oracle comparison.
    pub rel_tol: f64,
    /// Absolute floor for oracle comparison, relative to the largest `|S_n|`.
    pub abs_floor_rel: f64,
    /// Rows kept in the trajectory dump.
    pub trajectory_rows: usize,
    /// Also write `spectrum.gp`, a gnuplot script for the spectrum CSV.
    pub gnuplot: bool,
}

impl Default for RunSettings {
    fn default() -> Self {
        RunSettings {
            dt: None,
            settle_beats: 1,
            window_beats: 10,
            n_max: 8,
            samples_per_beat: 4096,
            steady_tol: 1e-8,
            commensurate: true,
            compare: Compare::Complex,
            rel_tol: 0.02,
            abs_floor_rel: 1e-6,
            trajectory_rows: 20_000,
            gnuplot: false,
        }
    }
}

impl RunSettings {
    pub fn check(&self) -> Result<(), ConfigError> {
        let bad = |m: &str| Err(ConfigError::Run(m.to_string()));
        if let Some(dt) = self.dt {
            if !(dt > 0.0 && dt.is_finite()) {
                return bad("dt must be positive");
            }
        }
        if self.window_beats < crate::spectra::MIN_WINDOW_PERIODS {
            return bad("window_beats must be at least 5");
        }
        if self.n_max < 1 {
            return bad("n_max must be at least 1");
        }
        if self.samples_per_beat < 16 {
            return bad("samples_per_beat must be at least 16");
        }
        if !(self.steady_tol > 0.0 && self.rel_tol >= 0.0 && self.abs_floor_rel >= 0.0) {
            return bad("tolerances must be non-negative (steady_tol positive)");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub qubit: QubitSection,
    pub frame: FrameSection,
    pub scenario: ScenarioSection,
    #[serde(default)]
    pub run: RunSettings,
}

/// A configuration resolved into model types, in units of `Γ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolved {
    pub qubit: QubitParams,
    pub frame: FrameConfig,
    pub scenario: Scenario,
    pub run: RunSettings,
    pub units: Units,
}

impl Config {
    pub fn from_toml_str(text: &str) -> Result<Self, ConfigError> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::from_toml_str(&text)
    }

    pub fn new(q: &QubitParams, f: &FrameConfig, s: &Scenario, run: RunSettings) -> Self {
        Config {
            qubit: QubitSection { gamma_rad: q.gamma_rad, gamma_phi: q.gamma_phi, dipole_scale: q.dipole_scale },
            frame: FrameSection { delta_w: f.delta_w, big_delta: f.big_delta },
            scenario: ScenarioSection::from_scenario(s),
            run,
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always representable")
    }

    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let canon = serde_json::to_vec(self).expect("config serializes");
        hex::encode(Sha256::digest(&canon))
    }

    /// Model types in the caller's units, unchecked beyond parsing.
    pub fn raw(&self) -> Result<(QubitParams, FrameConfig, Scenario), ConfigError> {
        let q = QubitParams {
            gamma_rad: self.qubit.gamma_rad,
            gamma_phi: self.qubit.gamma_phi,
            dipole_scale: self.qubit.dipole_scale,
        };
        let f = FrameConfig { delta_w: self.frame.delta_w, big_delta: self.frame.big_delta };
        Ok((q, f, self.scenario.to_scenario()?))
    }

    /// Checks rates and normalizes to `Γ = 1`.
    pub fn resolve(&self) -> Result<Resolved, ConfigError> {
        let (q, f, s) = self.raw()?;
        q.check()?;
        f.check()?;
        self.run.check()?;
        let units = Units::of(&q);
        let (qubit, frame, scenario) = units.normalize(&q, &f, &s);
        let mut run = self.run.clone();
        run.dt = run.dt.map(|dt| units.time_in(dt));
        Ok(Resolved { qubit, frame, scenario, run, units })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG2: &str = r#"
        [qubit]
        gamma_rad = 1.0
        gamma_phi = 0.0
        [frame]
        delta_w = 0.002
        big_delta = 0.0
        [scenario]
        kind = "squeezed"
        omega1 = 0.15
        n_bath = 2.0
        m_bath = 2.449489742783178
    "#;

    #[test]
    fn parses_and_round_trips() {
        let c = Config::from_toml_str(FIG2).unwrap();
        let r = c.resolve().unwrap();
        assert!(matches!(r.scenario, Scenario::Squeezed(b) if b.n_bath == 2.0));
        let again = Config::from_toml_str(&c.to_toml()).unwrap();
        assert_eq!(again, c);
        assert_eq!(again.hash(), c.hash());
        assert_eq!(c.hash().len(), 64);
    }

    #[test]
    fn complex_m_and_fock_defaults() {
        let c = Config::from_toml_str(
            "[frame]\ndelta_w = 0.002\n[scenario]\nkind = \"squeezed\"\nomega1 = 0.1\nn_bath = 1.0\nm_bath = [0.5, -0.5]\n",
        )
        .unwrap();
        let Scenario::Squeezed(b) = c.resolve().unwrap().scenario else { panic!() };
        assert_eq!(b.m_bath, C64::new(0.5, -0.5));

        let c = Config::from_toml_str(
            "[frame]\ndelta_w = 0.002\n[scenario]\nkind = \"fock\"\nomega1 = 0.15\ngamma_e = 0.5\nnu = 0.5\nperiod = 10.0\nenvelope_mode = \"step\"\n",
        )
        .unwrap();
        let Scenario::Fock(fk) = c.resolve().unwrap().scenario else { panic!() };
        assert_eq!(fk.envelope_mode, EnvelopeMode::Step);
        assert!(!fk.literal_sign);
    }

    #[test]
    fn unknown_and_misplaced_keys_rejected() {
        assert!(Config::from_toml_str(&format!("{FIG2}\nbogus = 1\n")).is_err());
        assert!(Config::from_toml_str(&FIG2.replace("[frame]", "[frame]\nextra = 2")).is_err());
        let c = Config::from_toml_str(&FIG2.replace("n_bath", "nu")).unwrap();
        assert!(c.resolve().is_err());
        let c = Config::from_toml_str(&FIG2.replace("\"squeezed\"", "\"laser\"")).unwrap();
        assert!(c.resolve().is_err());
        let c = Config::from_toml_str(&FIG2.replace("m_bath = 2.449489742783178", "")).unwrap();
        assert!(c.resolve().is_err());
    }

    #[test]
    fn normalizes_rates() {
        let text = FIG2.replace("gamma_rad = 1.0", "gamma_rad = 2.0").replace("omega1 = 0.15", "omega1 = 0.3");
        let r = Config::from_toml_str(&text).unwrap().resolve().unwrap();
        assert_eq!(r.qubit.gamma_rad, 1.0);
        assert_eq!(r.frame.delta_w, 0.001);
        assert_eq!(r.scenario.omega1(), 0.15);
        assert_eq!(r.units.rate_scale, 2.0);
    }
}
