// Copyright 2026 The qmix Authors
// SPDX-License-Identifier: Apache-2.0

//! Domain types shared by every other module: qubit rates, the rotating
//! frame, the three driving scenarios and the Bloch mean values.
//!
//! All quantities are stored in the rotating frame at the mean drive
//! frequency `ω_d`. Absolute carrier frequencies never enter the dynamics;
//! the tones sit at `ω_d ± δω` and the qubit at `ω_d + Δω`.
//!
//! Rates are measured in units of the radiative decay rate `Γ` once a
//! configuration has passed through [`Units::normalize`].

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

/// Slack allowed on the purity bound `4|⟨σ₋⟩|² + ⟨σ_z⟩² ≤ 1`.
pub const EPS_PHYS: f64 = 1e-9;

/// `δω` above this fraction of `γ` triggers a quasi-static warning.
pub const SLOW_BEAT_FRACTION: f64 = 0.1;

/// Pulse periods shorter than this many emitter lifetimes trigger a warning.
pub const MIN_PERIOD_LIFETIMES: f64 = 3.0;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("gamma_rad must be positive and finite, got {0}")]
    BadRadiativeRate(f64),
    #[error("gamma_phi must be non-negative and finite, got {0}")]
    BadDephasingRate(f64),
    #[error("dipole_scale must be positive and finite, got {0}")]
    BadDipoleScale(f64),
    #[error("delta_w must be positive and finite, got {0}")]
    BadBeat(f64),
    #[error("big_delta must be finite, got {0}")]
    BadDetuning(f64),
}

/// Rates of the scattering qubit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitParams {
    /// Radiative decay rate `Γ`.
    pub gamma_rad: f64,
    /// Pure dephasing rate `Γ_φ`.
    pub gamma_phi: f64,
    /// Dipole moment `μ`; only rescales the reported emitted amplitude.
    pub dipole_scale: f64,
}

impl QubitParams {
    pub fn new(gamma_rad: f64, gamma_phi: f64) -> Result<Self, ModelError> {
        let q = QubitParams { gamma_rad, gamma_phi, dipole_scale: 1.0 };
        q.check()?;
        Ok(q)
    }

    /// Purely radiative qubit, `Γ = 1`, `Γ_φ = 0`.
    pub fn radiative() -> Self {
        QubitParams { gamma_rad: 1.0, gamma_phi: 0.0, dipole_scale: 1.0 }
    }

    pub fn with_dipole_scale(mut self, mu: f64) -> Result<Self, ModelError> {
        self.dipole_scale = mu;
        self.check()?;
        Ok(self)
    }

    pub fn check(&self) -> Result<(), ModelError> {
        if !(self.gamma_rad > 0.0 && self.gamma_rad.is_finite()) {
            return Err(ModelError::BadRadiativeRate(self.gamma_rad));
        }
        if !(self.gamma_phi >= 0.0 && self.gamma_phi.is_finite()) {
            return Err(ModelError::BadDephasingRate(self.gamma_phi));
        }
        if !(self.dipole_scale > 0.0 && self.dipole_scale.is_finite()) {
            return Err(ModelError::BadDipoleScale(self.dipole_scale));
        }
        Ok(())
    }

    /// Decoherence rate `γ = Γ/2 + Γ_φ`.
    #[inline]
    pub fn gamma(&self) -> f64 {
        derive_gamma(self)
    }
}

impl Default for QubitParams {
    fn default() -> Self {
        QubitParams::radiative()
    }
}

/// `γ = Γ/2 + Γ_φ`.
pub fn derive_gamma(q: &QubitParams) -> f64 {
    0.5 * q.gamma_rad + q.gamma_phi
}

/// Rotating frame at `ω_d = (ω₁ + ω₂)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameConfig {
    /// Half tone splitting `δω = ω₁ − ω_d = ω_d − ω₂`.
    pub delta_w: f64,
    /// Qubit detuning `Δω = ω₀₁ − ω_d`.
    pub big_delta: f64,
}

impl FrameConfig {
    pub fn new(delta_w: f64, big_delta: f64) -> Result<Self, ModelError> {
        let f = FrameConfig { delta_w, big_delta };
        f.check()?;
        Ok(f)
    }

    pub fn check(&self) -> Result<(), ModelError> {
        if !(self.delta_w > 0.0 && self.delta_w.is_finite()) {
            return Err(ModelError::BadBeat(self.delta_w));
        }
        if !self.big_delta.is_finite() {
            return Err(ModelError::BadDetuning(self.big_delta));
        }
        Ok(())
    }

    /// Period `2π/δω` of the slowest beat; every `S_n` is periodic in it.
    pub fn beat_period(&self) -> f64 {
        std::f64::consts::TAU / self.delta_w
    }
}

/// How the decay of the emitter correlators between pulses is modelled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum EnvelopeMode {
    /// Exponential decay at `Γ + γₑ` and `γ + γₑ`.
    #[default]
    Exact,
    /// Envelope 1 up to a cutoff after the pulse, then 0.
    Step,
}

/// Classical tones at `ω₁` and `ω₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoTone {
    pub omega1: f64,
    pub omega2: f64,
}

/// Classical tone at `ω₁` plus broadband squeezed vacuum centred at `ω₂`
/// (white-noise limit), with occupation `N` and pair correlation `M`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezedBath {
    pub omega1: f64,
    pub n_bath: f64,
    pub m_bath: C64,
}

impl SqueezedBath {
    /// `(2N+1)² − 4|M|²`, positive for every physical bath.
    pub fn pair_discriminant(&self) -> f64 {
        let k = 2.0 * self.n_bath + 1.0;
        k * k - 4.0 * self.m_bath.norm_sqr()
    }

    pub fn is_pure(&self) -> bool {
        let bound = self.n_bath * (self.n_bath + 1.0);
        (self.m_bath.norm_sqr() - bound).abs() <= 1e-12 * bound.max(1.0)
    }

    /// Pure squeezed vacuum with real `M = √(N(N+1))`.
    pub fn pure(omega1: f64, n_bath: f64) -> Self {
        SqueezedBath { omega1, n_bath, m_bath: C64::new((n_bath * (n_bath + 1.0)).sqrt(), 0.0) }
    }
}

/// Classical tone at `ω₁` plus a pulsed emitter producing `√(1−ν)|0⟩ + √ν|1⟩`
/// at `ω₂` every `period`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockSource {
    pub omega1: f64,
    /// Emitter radiative rate `γₑ`.
    pub gamma_e: f64,
    /// Single-photon probability `ν`.
    pub nu: f64,
    /// Pulse repetition period `T`.
    pub period: f64,
    pub envelope_mode: EnvelopeMode,
    /// Step-mode cutoff after each pulse; `1/γₑ` when absent.
    pub step_cutoff: Option<f64>,
    /// Use the printed magnitudes `+|⟨σ_zσ₋ᵉ⟩|`, `|⟨σ₋σ₊ᵉ⟩|` instead of the
    /// signed factorized products.
    pub literal_sign: bool,
}

impl FockSource {
    pub fn new(omega1: f64, gamma_e: f64, nu: f64, period: f64) -> Self {
        FockSource {
            omega1,
            gamma_e,
            nu,
            period,
            envelope_mode: EnvelopeMode::Exact,
            step_cutoff: None,
            literal_sign: false,
        }
    }

    /// `sin θ` with `cos θ = 2ν − 1`.
    pub fn sin_theta(&self) -> f64 {
        2.0 * (self.nu * (1.0 - self.nu)).max(0.0).sqrt()
    }

    pub fn cutoff(&self) -> f64 {
        self.step_cutoff.unwrap_or(1.0 / self.gamma_e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    TwoTone,
    Squeezed,
    Fock,
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScenarioKind::TwoTone => "two_tone",
            ScenarioKind::Squeezed => "squeezed",
            ScenarioKind::Fock => "fock",
        })
    }
}

/// Which second field accompanies the classical `ω₁` tone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Scenario {
    TwoTone(TwoTone),
    Squeezed(SqueezedBath),
    Fock(FockSource),
}

impl Scenario {
    pub fn kind(&self) -> ScenarioKind {
        match self {
            Scenario::TwoTone(_) => ScenarioKind::TwoTone,
            Scenario::Squeezed(_) => ScenarioKind::Squeezed,
            Scenario::Fock(_) => ScenarioKind::Fock,
        }
    }

    pub fn omega1(&self) -> f64 {
        match self {
            Scenario::TwoTone(s) => s.omega1,
            Scenario::Squeezed(s) => s.omega1,
            Scenario::Fock(s) => s.omega1,
        }
    }

    pub fn with_omega1(mut self, omega1: f64) -> Self {
        match &mut self {
            Scenario::TwoTone(s) => s.omega1 = omega1,
            Scenario::Squeezed(s) => s.omega1 = omega1,
            Scenario::Fock(s) => s.omega1 = omega1,
        }
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Violation,
    Warning,
    Note,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Issue {
    pub severity: Severity,
    pub field: &'static str,
    pub message: String,
}

/// Outcome of [`validate_scenario`]; violations are reported, never raised.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        !self.issues.iter().any(|i| i.severity == Severity::Violation)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Issue> {
        self.issues.iter().filter(|i| i.severity == Severity::Violation)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Issue> {
        self.issues.iter().filter(|i| i.severity == Severity::Warning)
    }

    pub fn has_note(&self, needle: &str) -> bool {
        self.issues.iter().any(|i| i.severity == Severity::Note && i.message.contains(needle))
    }

    fn push(&mut self, severity: Severity, field: &'static str, message: String) {
        self.issues.push(Issue { severity, field, message });
    }

    fn violation(&mut self, field: &'static str, message: String) {
        self.push(Severity::Violation, field, message)
    }

    fn warning(&mut self, field: &'static str, message: String) {
        self.push(Severity::Warning, field, message)
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.issues.extend(other.issues);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for issue in &self.issues {
            writeln!(f, "{:?} [{}]: {}", issue.severity, issue.field, issue.message)?;
        }
        Ok(())
    }
}

fn check_amplitude(report: &mut ValidationReport, field: &'static str, v: f64) {
    if !v.is_finite() || v < 0.0 {
        report.violation(field, format!("{field} must be finite and >= 0, got {v}"));
    }
}

/// Checks every scenario invariant and lists what fails.
pub fn validate_scenario(s: &Scenario) -> ValidationReport {
    let mut r = ValidationReport::default();
    match s {
        Scenario::TwoTone(tt) => {
            check_amplitude(&mut r, "omega1", tt.omega1);
            check_amplitude(&mut r, "omega2", tt.omega2);
        }
        Scenario::Squeezed(sq) => {
            check_amplitude(&mut r, "omega1", sq.omega1);
            let n = sq.n_bath;
            if !n.is_finite() || n < 0.0 {
                r.violation("n_bath", format!("n_bath must be finite and >= 0, got {n}"));
            } else if !(sq.m_bath.re.is_finite() && sq.m_bath.im.is_finite()) {
                r.violation("m_bath", "m_bath must be finite".to_string());
            } else {
                let bound = n * (n + 1.0);
                let m2 = sq.m_bath.norm_sqr();
                if m2 > bound * (1.0 + 1e-12) + 1e-300 {
                    r.violation("m_bath", format!("|M|^2 = {m2} > N(N+1) = {bound}"));
                } else if bound > 0.0 && sq.is_pure() {
                    r.push(Severity::Note, "m_bath", "pure squeezed state".to_string());
                }
            }
        }
        Scenario::Fock(fk) => {
            check_amplitude(&mut r, "omega1", fk.omega1);
            if !(fk.gamma_e.is_finite() && fk.gamma_e > 0.0) {
                r.violation("gamma_e", format!("gamma_e must be positive, got {}", fk.gamma_e));
            }
            if !(fk.nu.is_finite() && (0.0..=1.0).contains(&fk.nu)) {
                r.violation("nu", format!("nu must lie in [0, 1], got {}", fk.nu));
            }
            if !(fk.period.is_finite() && fk.period > 0.0) {
                r.violation("period", format!("period must be positive, got {}", fk.period));
            } else if fk.gamma_e.is_finite() && fk.gamma_e > 0.0 && fk.period * fk.gamma_e < MIN_PERIOD_LIFETIMES {
                r.warning(
                    "period",
                    format!("period * gamma_e = {} < {MIN_PERIOD_LIFETIMES}; pulses overlap", fk.period * fk.gamma_e),
                );
            }
            if let Some(c) = fk.step_cutoff {
                if !(c.is_finite() && c > 0.0) {
                    r.violation("step_cutoff", format!("step_cutoff must be positive, got {c}"));
                }
            }
        }
    }
    r
}

/// Scenario checks plus qubit and frame checks that need the combination.
pub fn validate_config(q: &QubitParams, frame: &FrameConfig, s: &Scenario) -> ValidationReport {
    let mut r = ValidationReport::default();
    if let Err(e) = q.check() {
        r.violation("qubit", e.to_string());
    }
    if let Err(e) = frame.check() {
        r.violation("frame", e.to_string());
    }
    if r.is_ok() && frame.delta_w > SLOW_BEAT_FRACTION * q.gamma() {
        r.warning(
            "delta_w",
            format!(
                "delta_w = {} exceeds gamma/10 = {}; quasi-static oracles lose accuracy",
                frame.delta_w,
                SLOW_BEAT_FRACTION * q.gamma()
            ),
        );
    }
    r.merge(validate_scenario(s));
    r
}

/// Rotating-frame means `⟨σ₋⟩` and `⟨σ_z⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BlochState {
    pub sm: C64,
    pub sz: f64,
}

impl BlochState {
    pub const GROUND: BlochState = BlochState { sm: C64::new(0.0, 0.0), sz: -1.0 };

    pub fn new(sm: C64, sz: f64) -> Self {
        BlochState { sm, sz }
    }

    /// `4|⟨σ₋⟩|² + ⟨σ_z⟩²`, the squared Bloch-vector length.
    #[inline]
    pub fn bloch_norm_sqr(&self) -> f64 {
        4.0 * self.sm.norm_sqr() + self.sz * self.sz
    }

    pub fn is_finite(&self) -> bool {
        self.sm.re.is_finite() && self.sm.im.is_finite() && self.sz.is_finite()
    }

    /// Sup-norm distance over the three real components.
    pub fn sup_dist(&self, other: &BlochState) -> f64 {
        (self.sm.re - other.sm.re).abs().max((self.sm.im - other.sm.im).abs()).max((self.sz - other.sz).abs())
    }
}

impl Add for BlochState {
    type Output = BlochState;
    #[inline]
    fn add(self, o: BlochState) -> BlochState {
        BlochState { sm: self.sm + o.sm, sz: self.sz + o.sz }
    }
}

impl Sub for BlochState {
    type Output = BlochState;
    #[inline]
    fn sub(self, o: BlochState) -> BlochState {
        BlochState { sm: self.sm - o.sm, sz: self.sz - o.sz }
    }
}

impl Mul<f64> for BlochState {
    type Output = BlochState;
    #[inline]
    fn mul(self, k: f64) -> BlochState {
        BlochState { sm: self.sm * k, sz: self.sz * k }
    }
}

/// True iff `4|sm|² + sz² ≤ 1 + tol`.
pub fn purity_check(b: &BlochState, tol: f64) -> bool {
    b.bloch_norm_sqr() <= 1.0 + tol
}

/// Uniformly sampled rotating-frame time series.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub t0: f64,
    pub dt: f64,
    pub samples: Vec<BlochState>,
    pub frame: FrameConfig,
    /// Largest `4|sm|² + sz² − 1` seen at any integrator step, including
    /// steps that were not recorded.
    pub max_purity_excess: f64,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn time(&self, i: usize) -> f64 {
        self.t0 + self.dt * i as f64
    }

    pub fn t_end(&self) -> f64 {
        self.time(self.samples.len().saturating_sub(1))
    }

    /// Number of samples per `period`, if the period is an integer multiple
    /// of the sampling step to relative precision `1e-9`.
    pub fn samples_per(&self, period: f64) -> Option<usize> {
        let ratio = period / self.dt;
        let k = ratio.round();
        if k >= 1.0 && (ratio - k).abs() <= 1e-9 * ratio.max(1.0) {
            Some(k as usize)
        } else {
            None
        }
    }
}

/// Rescaling to units where `Γ = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Units {
    /// The radiative rate `Γ` in the caller's units.
    pub rate_scale: f64,
}

impl Units {
    pub fn of(q: &QubitParams) -> Self {
        Units { rate_scale: q.gamma_rad }
    }

    pub fn rate_in(&self, r: f64) -> f64 {
        r / self.rate_scale
    }

    pub fn rate_out(&self, r: f64) -> f64 {
        r * self.rate_scale
    }

    pub fn time_in(&self, t: f64) -> f64 {
        t * self.rate_scale
    }

    pub fn time_out(&self, t: f64) -> f64 {
        t / self.rate_scale
    }

    fn map(
        &self,
        q: &QubitParams,
        f: &FrameConfig,
        s: &Scenario,
        rate: impl Fn(f64) -> f64,
        time: impl Fn(f64) -> f64,
    ) -> (QubitParams, FrameConfig, Scenario) {
        let q =
            QubitParams { gamma_rad: rate(q.gamma_rad), gamma_phi: rate(q.gamma_phi), dipole_scale: q.dipole_scale };
        let f = FrameConfig { delta_w: rate(f.delta_w), big_delta: rate(f.big_delta) };
        let s = match *s {
            Scenario::TwoTone(tt) => Scenario::TwoTone(TwoTone { omega1: rate(tt.omega1), omega2: rate(tt.omega2) }),
            Scenario::Squeezed(sq) => Scenario::Squeezed(SqueezedBath { omega1: rate(sq.omega1), ..sq }),
            Scenario::Fock(fk) => Scenario::Fock(FockSource {
                omega1: rate(fk.omega1),
                gamma_e: rate(fk.gamma_e),
                period: time(fk.period),
                step_cutoff: fk.step_cutoff.map(&time),
                ..fk
            }),
        };
        (q, f, s)
    }

    /// Expresses all rates in units of `Γ` and all times in `1/Γ`.
    pub fn normalize(&self, q: &QubitParams, f: &FrameConfig, s: &Scenario) -> (QubitParams, FrameConfig, Scenario) {
        self.map(q, f, s, |r| self.rate_in(r), |t| self.time_in(t))
    }

    pub fn denormalize(&self, q: &QubitParams, f: &FrameConfig, s: &Scenario) -> (QubitParams, FrameConfig, Scenario) {
        self.map(q, f, s, |r| self.rate_out(r), |t| self.time_out(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_from_rates() {
        let g = |gr, gp| derive_gamma(&QubitParams::new(gr, gp).unwrap());
        assert_eq!(g(1.0, 0.0), 0.5);
        assert_eq!(g(1.0, 0.25), 0.75);
        assert_eq!(g(2.0, 0.0), 1.0);
    }

    #[test]
    fn qubit_rejects_bad_rates() {
        assert!(QubitParams::new(0.0, 0.0).is_err());
        assert!(QubitParams::new(1.0, -0.1).is_err());
        assert!(QubitParams::new(f64::NAN, 0.0).is_err());
        assert!(QubitParams::radiative().with_dipole_scale(0.0).is_err());
    }

    #[test]
    fn squeezed_bounds() {
        let vac = Scenario::Squeezed(SqueezedBath { omega1: 0.1, n_bath: 0.0, m_bath: C64::new(0.0, 0.0) });
        let r = validate_scenario(&vac);
        assert!(r.is_ok());
        assert!(!r.has_note("pure"));

        let over = Scenario::Squeezed(SqueezedBath { omega1: 0.1, n_bath: 1.0, m_bath: C64::new(1.5, 0.0) });
        let r = validate_scenario(&over);
        assert!(!r.is_ok());
        let v: Vec<_> = r.violations().collect();
        assert_eq!(v.len(), 1);
        assert!(v[0].message.contains("N(N+1) = 2"), "{}", v[0].message);

        let pure = Scenario::Squeezed(SqueezedBath { omega1: 0.1, n_bath: 1.0, m_bath: C64::new(2f64.sqrt(), 0.0) });
        let r = validate_scenario(&pure);
        assert!(r.is_ok());
        assert!(r.has_note("pure squeezed state"));
    }

    #[test]
    fn fock_checks() {
        let mut f = FockSource::new(0.1, 0.5, 0.5, 10.0);
        assert!(validate_scenario(&Scenario::Fock(f)).issues.is_empty());
        f.period = 2.0;
        let r = validate_scenario(&Scenario::Fock(f));
        assert!(r.is_ok());
        assert_eq!(r.warnings().count(), 1);
        f.nu = 1.5;
        assert!(!validate_scenario(&Scenario::Fock(f)).is_ok());
    }

    #[test]
    fn fast_beat_warns() {
        let q = QubitParams::radiative();
        let s = Scenario::TwoTone(TwoTone { omega1: 0.1, omega2: 0.1 });
        let ok = validate_config(&q, &FrameConfig::new(0.002, 0.0).unwrap(), &s);
        assert!(ok.issues.is_empty());
        let fast = validate_config(&q, &FrameConfig { delta_w: 0.2, big_delta: 0.0 }, &s);
        assert!(fast.is_ok());
        assert_eq!(fast.warnings().count(), 1);
    }

    #[test]
    fn validation_total_on_odd_input() {
        for v in [f64::NAN, f64::INFINITY, -1.0, 0.0, 1e300] {
            let _ =
                validate_scenario(&Scenario::Squeezed(SqueezedBath { omega1: v, n_bath: v, m_bath: C64::new(v, v) }));
            let _ =
                validate_scenario(&Scenario::Fock(FockSource { step_cutoff: Some(v), ..FockSource::new(v, v, v, v) }));
        }
    }

    #[test]
    fn purity() {
        assert!(purity_check(&BlochState::GROUND, 0.0));
        assert!(purity_check(&BlochState::new(C64::new(0.5, 0.0), 0.0), 1e-12));
        assert!(!purity_check(&BlochState::new(C64::new(0.6, 0.0), 0.5), 1e-9));
    }

    #[test]
    fn trajectory_period_alignment() {
        let tr = Trajectory {
            t0: 0.0,
            dt: 0.25,
            samples: vec![BlochState::GROUND; 8],
            frame: FrameConfig::new(1.0, 0.0).unwrap(),
            max_purity_excess: 0.0,
        };
        assert_eq!(tr.samples_per(1.0), Some(4));
        assert_eq!(tr.samples_per(1.1), None);
        assert_eq!(tr.t_end(), 1.75);
    }
}
