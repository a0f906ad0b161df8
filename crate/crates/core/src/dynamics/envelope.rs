// Copyright 2026 The qmix Authors
// SPDX-License-Identifier: Apache-2.0

//! Emitter-qubit correlators between pulses.

use num_complex::Complex64 as C64;

use crate::analytic::pulse_correlators;
use crate::model::{EnvelopeMode, FockSource, FrameConfig, QubitParams};

/// Pulse values of `⟨σ_zσ₋ᵉ⟩` and `⟨σ₋σ₊ᵉ⟩` and how they decay until the
/// next pulse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelatorDrive {
    pub zc_mag: f64,
    pub zc_sign: f64,
    pub pc_mag: f64,
    /// Phase of `⟨σ₋σ₊ᵉ⟩` at the pulse `n = 0`.
    pub pc_phase0: f64,
    pub envelope_mode: EnvelopeMode,
    pub step_cutoff: f64,
    pub period: f64,
    /// Decay rate `Γ + γₑ` of `⟨σ_zσ₋ᵉ⟩`.
    pub rate_z: f64,
    /// Decay rate `γ + γₑ` of `⟨σ₋σ₊ᵉ⟩`.
    pub rate_p: f64,
    /// Coupling `√(γγₑ)`.
    pub coupling: f64,
    pub delta_w: f64,
    pub big_delta: f64,
}

impl CorrelatorDrive {
    pub fn new(fk: &FockSource, q: &QubitParams, f: &FrameConfig) -> Self {
        let (zc, pc) = pulse_correlators(fk, q, f, 0);
        let (zc_sign, pc_phase0) =
            if fk.literal_sign { (1.0, 0.0) } else { (if zc.re < 0.0 { -1.0 } else { 1.0 }, pc.arg()) };
        CorrelatorDrive {
            zc_mag: zc.norm(),
            zc_sign,
            pc_mag: pc.norm(),
            pc_phase0,
            envelope_mode: fk.envelope_mode,
            step_cutoff: fk.cutoff(),
            period: fk.period,
            rate_z: q.gamma_rad + fk.gamma_e,
            rate_p: q.gamma() + fk.gamma_e,
            coupling: (q.gamma() * fk.gamma_e).sqrt(),
            delta_w: f.delta_w,
            big_delta: f.big_delta,
        }
    }

    /// Index of the last pulse at or before `t`.
    pub fn pulse_index(&self, t: f64) -> i64 {
        (t / self.period).floor() as i64
    }

    /// `(env_z, env_p)` at time `tau` after a pulse, each in `[0, 1]`.
    pub fn envelopes(&self, tau: f64) -> (f64, f64) {
        match self.envelope_mode {
            EnvelopeMode::Exact => ((-self.rate_z * tau).exp(), (-self.rate_p * tau).exp()),
            EnvelopeMode::Step => {
                let on = if tau <= self.step_cutoff { 1.0 } else { 0.0 };
                (on, on)
            }
        }
    }

    /// Correlators at `t`, measuring the decay from pulse `n`.
    pub fn at_pulse(&self, t: f64, n: i64) -> (C64, C64) {
        let tau = t - n as f64 * self.period;
        let (ez, ep) = self.envelopes(tau);
        let dw = self.delta_w;
        let zc = C64::from_polar(self.zc_sign * self.zc_mag * ez, dw * t);
        let phase = self.pc_phase0 - 2.0 * dw * t + (dw - self.big_delta) * tau;
        let pc = C64::from_polar(self.pc_mag * ep, phase);
        (zc, pc)
    }
}

/// `(⟨σ_zσ₋ᵉ⟩(t), ⟨σ₋σ₊ᵉ⟩(t))` with the decay measured from the last pulse.
pub fn correlator_envelopes(t: f64, drive: &CorrelatorDrive) -> (C64, C64) {
    drive.at_pulse(t, drive.pulse_index(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn setup(mode: EnvelopeMode) -> (FockSource, QubitParams, FrameConfig, CorrelatorDrive) {
        let mut fk = FockSource::new(0.15, 0.5, 0.5, 10.0);
        fk.envelope_mode = mode;
        let q = QubitParams::radiative();
        let f = FrameConfig::new(std::f64::consts::TAU / 3140.0, 0.0).unwrap();
        let d = CorrelatorDrive::new(&fk, &q, &f);
        (fk, q, f, d)
    }

    #[test]
    fn pulse_values_exact() {
        let (fk, q, f, d) = setup(EnvelopeMode::Exact);
        for n in [0_i64, 1, 7, 313] {
            let (zc, pc) = correlator_envelopes(n as f64 * fk.period, &d);
            let (zc0, pc0) = pulse_correlators(&fk, &q, &f, n);
            assert!((zc - zc0).norm() < 1e-12, "n={n}");
            assert!((pc - pc0).norm() < 1e-12, "n={n}");
        }
        assert_abs_diff_eq!(d.zc_mag, 0.478469, epsilon = 1e-6);
        assert_abs_diff_eq!(d.pc_mag, 0.071770, epsilon = 1e-6);
        assert_eq!(d.zc_sign, -1.0);
    }

    #[test]
    fn exponential_decay_and_periodicity() {
        let (fk, _, _, d) = setup(EnvelopeMode::Exact);
        let tau = 3.0 / d.rate_z;
        let (zc, _) = correlator_envelopes(2.0 * fk.period + tau, &d);
        assert_abs_diff_eq!(zc.norm() / d.zc_mag, (-3.0_f64).exp(), epsilon = 1e-12);
        assert_abs_diff_eq!((-3.0_f64).exp(), 0.0498, epsilon = 1e-4);
        for t in [0.3, 4.1, 9.99] {
            let (z1, p1) = correlator_envelopes(t, &d);
            let (z2, p2) = correlator_envelopes(t + fk.period, &d);
            assert_abs_diff_eq!(z1.norm(), z2.norm(), epsilon = 1e-12);
            assert_abs_diff_eq!(p1.norm(), p2.norm(), epsilon = 1e-12);
        }
    }

    #[test]
    fn step_mode_and_literal_signs() {
        let (mut fk, q, f, d) = setup(EnvelopeMode::Step);
        assert_eq!(d.envelopes(1.9), (1.0, 1.0));
        assert_eq!(d.envelopes(2.1), (0.0, 0.0));
        fk.literal_sign = true;
        let lit = CorrelatorDrive::new(&fk, &q, &f);
        assert_eq!((lit.zc_sign, lit.pc_phase0), (1.0, 0.0));
        let (zc, pc) = correlator_envelopes(0.0, &lit);
        assert!(zc.re > 0.0 && pc.im.abs() < 1e-15 && pc.re > 0.0);
    }
}
