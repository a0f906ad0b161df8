// Copyright 2026 The qmix Authors
// SPDX-License-Identifier: Apache-2.0

//! Rotating-frame Maxwell-Bloch right-hand sides.
//!
//! With `sp = conj(sm)` and a classical field `E(t)` the drive enters as
//! `−(i/2)E sz` on `sm` and `−2 Im(sp E)` on `sz`.

use num_complex::Complex64 as C64;

use super::envelope::CorrelatorDrive;
use crate::model::{BlochState, FockSource, FrameConfig, QubitParams, Scenario, ScenarioKind, SqueezedBath, TwoTone};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
#[error("equations for {expected} cannot be built from a {found} scenario")]
pub struct KindMismatch {
    pub expected: ScenarioKind,
    pub found: ScenarioKind,
}

/// Scenario tag together with its fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RhsKind {
    TwoTone(TwoTone),
    Squeezed(SqueezedBath),
    Fock(FockSource),
}

impl RhsKind {
    pub fn new(kind: ScenarioKind, s: &Scenario) -> Result<Self, KindMismatch> {
        match (kind, *s) {
            (ScenarioKind::TwoTone, Scenario::TwoTone(t)) => Ok(RhsKind::TwoTone(t)),
            (ScenarioKind::Squeezed, Scenario::Squeezed(b)) => Ok(RhsKind::Squeezed(b)),
            (ScenarioKind::Fock, Scenario::Fock(fk)) => Ok(RhsKind::Fock(fk)),
            _ => Err(KindMismatch { expected: kind, found: s.kind() }),
        }
    }

    pub fn kind(&self) -> ScenarioKind {
        match self {
            RhsKind::TwoTone(_) => ScenarioKind::TwoTone,
            RhsKind::Squeezed(_) => ScenarioKind::Squeezed,
            RhsKind::Fock(_) => ScenarioKind::Fock,
        }
    }

    pub fn scenario(&self) -> Scenario {
        match *self {
            RhsKind::TwoTone(t) => Scenario::TwoTone(t),
            RhsKind::Squeezed(b) => Scenario::Squeezed(b),
            RhsKind::Fock(fk) => Scenario::Fock(fk),
        }
    }
}

#[inline]
fn classical(s: &BlochState, field: C64, gamma_sm: f64, big_delta: f64) -> C64 {
    s.sm * C64::new(-gamma_sm, -big_delta) - C64::new(0.0, 0.5) * field * s.sz
}

#[inline]
fn pumping(s: &BlochState, field: C64) -> f64 {
    -2.0 * (s.sm.conj() * field).im
}

pub fn rhs_two_tone(s: &BlochState, t: f64, tt: &TwoTone, q: &QubitParams, f: &FrameConfig) -> BlochState {
    let e = C64::from_polar(1.0, -f.delta_w * t);
    let field = tt.omega1 * e + tt.omega2 * e.conj();
    BlochState { sm: classical(s, field, q.gamma(), f.big_delta), sz: -q.gamma_rad * (s.sz + 1.0) + pumping(s, field) }
}

pub fn rhs_squeezed(s: &BlochState, t: f64, sq: &SqueezedBath, q: &QubitParams, f: &FrameConfig) -> BlochState {
    let e = C64::from_polar(1.0, -f.delta_w * t);
    let field = sq.omega1 * e;
    let thermal = 1.0 + 2.0 * sq.n_bath;
    let gamma = q.gamma();
    let pair = -2.0 * gamma * sq.m_bath * e.conj() * e.conj();
    BlochState {
        sm: classical(s, field, gamma * thermal, f.big_delta) + pair * s.sm.conj(),
        sz: -q.gamma_rad * thermal * s.sz - q.gamma_rad + pumping(s, field),
    }
}

/// Fock-case right-hand side with the correlator decay measured from pulse `n`.
pub fn rhs_fock_at(
    s: &BlochState,
    t: f64,
    n: i64,
    fk: &FockSource,
    q: &QubitParams,
    f: &FrameConfig,
    drive: &CorrelatorDrive,
) -> BlochState {
    let classical = rhs_two_tone(s, t, &TwoTone { omega1: fk.omega1, omega2: 0.0 }, q, f);
    let (zc, pc) = drive.at_pulse(t, n);
    BlochState { sm: classical.sm + drive.coupling * zc, sz: classical.sz + 4.0 * drive.coupling * pc.re }
}

pub fn rhs_fock(
    s: &BlochState,
    t: f64,
    fk: &FockSource,
    q: &QubitParams,
    f: &FrameConfig,
    drive: &CorrelatorDrive,
) -> BlochState {
    rhs_fock_at(s, t, drive.pulse_index(t), fk, q, f, drive)
}

/// Right-hand side bundled with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equations {
    pub rhs: RhsKind,
    pub qubit: QubitParams,
    pub frame: FrameConfig,
    /// Present exactly for the Fock case.
    pub drive: Option<CorrelatorDrive>,
}

impl Equations {
    pub fn new(kind: ScenarioKind, s: &Scenario, q: &QubitParams, f: &FrameConfig) -> Result<Self, KindMismatch> {
        let rhs = RhsKind::new(kind, s)?;
        let drive = match rhs {
            RhsKind::Fock(fk) => Some(CorrelatorDrive::new(&fk, q, f)),
            _ => None,
        };
        Ok(Equations { rhs, qubit: *q, frame: *f, drive })
    }

    pub fn for_scenario(s: &Scenario, q: &QubitParams, f: &FrameConfig) -> Self {
        Self::new(s.kind(), s, q, f).expect("kind taken from the scenario")
    }

    pub fn kind(&self) -> ScenarioKind {
        self.rhs.kind()
    }

    /// Pulse period for the Fock case.
    pub fn pulse_period(&self) -> Option<f64> {
        match self.rhs {
            RhsKind::Fock(fk) => Some(fk.period),
            _ => None,
        }
    }

    /// Derivative at `t`; `pulse` fixes which pulse the Fock correlators
    /// decay from and is ignored otherwise.
    #[inline]
    pub fn eval_at(&self, s: &BlochState, t: f64, pulse: i64) -> BlochState {
        match &self.rhs {
            RhsKind::TwoTone(tt) => rhs_two_tone(s, t, tt, &self.qubit, &self.frame),
            RhsKind::Squeezed(sq) => rhs_squeezed(s, t, sq, &self.qubit, &self.frame),
            RhsKind::Fock(fk) => {
                let d = self.drive.as_ref().expect("Fock equations carry a drive");
                rhs_fock_at(s, t, pulse, fk, &self.qubit, &self.frame, d)
            }
        }
    }

    pub fn eval(&self, s: &BlochState, t: f64) -> BlochState {
        let pulse = self.drive.map_or(0, |d| d.pulse_index(t));
        self.eval_at(s, t, pulse)
    }

    /// Upper bound on the rate of the linear part of the generator.
    pub fn stiffness(&self) -> f64 {
        let q = &self.qubit;
        let base = q.gamma_rad + q.gamma() + self.frame.big_delta.abs() + 2.0 * self.frame.delta_w;
        match &self.rhs {
            RhsKind::TwoTone(tt) => base + tt.omega1 + tt.omega2,
            RhsKind::Squeezed(sq) => {
                let th = 1.0 + 2.0 * sq.n_bath;
                th * (q.gamma_rad + q.gamma())
                    + 2.0 * q.gamma() * sq.m_bath.norm()
                    + self.frame.big_delta.abs()
                    + 2.0 * self.frame.delta_w
                    + sq.omega1
            }
            RhsKind::Fock(fk) => base + fk.omega1 + q.gamma_rad + fk.gamma_e,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{squeezed_steady, two_tone_steady};
    use approx::assert_abs_diff_eq;

    fn q() -> QubitParams {
        QubitParams::radiative()
    }

    #[test]
    fn undriven_ground_is_stationary() {
        let f = FrameConfig::new(0.002, 0.0).unwrap();
        let d = rhs_two_tone(&BlochState::GROUND, 3.7, &TwoTone { omega1: 0.0, omega2: 0.0 }, &q(), &f);
        assert_eq!(d, BlochState::new(C64::new(0.0, 0.0), 0.0));
    }

    #[test]
    fn quasi_static_residual_linear_in_beat() {
        // The closed form zeroes the RHS at frozen phase; its true time
        // derivative, which the RHS misses, is O(δω).
        let tt = TwoTone { omega1: 0.15, omega2: 0.15 };
        let residual = |dw: f64| {
            let f = FrameConfig::new(dw, 0.0).unwrap();
            let h = 1e-3;
            (0..50)
                .map(|k| {
                    let t = k as f64 * 0.37 / dw;
                    let s = two_tone_steady(t, &tt, &q(), &f);
                    let d = rhs_two_tone(&s, t, &tt, &q(), &f);
                    assert!(d.sm.norm().max(d.sz.abs()) < 1e-15);
                    let fd =
                        (two_tone_steady(t + h, &tt, &q(), &f) - two_tone_steady(t - h, &tt, &q(), &f)) * (0.5 / h);
                    fd.sm.norm().max(fd.sz.abs())
                })
                .fold(0.0, f64::max)
        };
        let (r1, r2) = (residual(0.004), residual(0.002));
        assert!(r1 > 0.0 && r1 < 1e-2);
        assert_abs_diff_eq!(r1 / r2, 2.0, epsilon = 0.01);
    }

    #[test]
    fn squeezed_stationary_and_coherent_limit() {
        let f = FrameConfig::new(0.002, 0.1).unwrap();
        let sq = SqueezedBath { omega1: 0.0, n_bath: 2.0, m_bath: C64::new(6f64.sqrt(), 0.0) };
        let s = BlochState::new(C64::new(0.0, 0.0), -1.0 / 5.0);
        let d = rhs_squeezed(&s, 12.0, &sq, &q(), &f);
        assert!(d.sm.norm() < 1e-15 && d.sz.abs() < 1e-15);
        let s0 = squeezed_steady(12.0, &sq, &q(), &f).unwrap();
        assert!(s0.sup_dist(&s) < 1e-15);

        let coh = SqueezedBath { omega1: 0.3, n_bath: 0.0, m_bath: C64::new(0.0, 0.0) };
        let tt = TwoTone { omega1: 0.3, omega2: 0.0 };
        for k in 0..100 {
            let t = 17.3 * k as f64;
            let s = BlochState::new(C64::new(0.01 * k as f64 - 0.4, 0.3), 0.2 - 0.01 * k as f64);
            let a = rhs_squeezed(&s, t, &coh, &q(), &f);
            let b = rhs_two_tone(&s, t, &tt, &q(), &f);
            assert!(a.sup_dist(&b) < 1e-12);
        }
    }

    #[test]
    fn fock_without_photon_is_classical() {
        let f = FrameConfig::new(0.002, 0.0).unwrap();
        let fk = FockSource::new(0.15, 0.5, 0.0, 10.0);
        let eq = Equations::for_scenario(&Scenario::Fock(fk), &q(), &f);
        let tt = TwoTone { omega1: 0.15, omega2: 0.0 };
        let s = BlochState::new(C64::new(0.1, 0.2), -0.8);
        for t in [0.0, 3.3, 10.0, 55.5] {
            assert_eq!(eq.eval(&s, t), rhs_two_tone(&s, t, &tt, &q(), &f));
        }
    }

    #[test]
    fn mismatched_kind_rejected() {
        let s = Scenario::TwoTone(TwoTone { omega1: 0.1, omega2: 0.1 });
        let f = FrameConfig::new(0.002, 0.0).unwrap();
        assert!(Equations::new(ScenarioKind::Fock, &s, &q(), &f).is_err());
        assert!(Equations::new(ScenarioKind::TwoTone, &s, &q(), &f).is_ok());
    }
}
