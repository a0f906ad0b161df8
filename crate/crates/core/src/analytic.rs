// Copyright 2026 The qmix Authors
// SPDX-License-Identifier: Apache-2.0

//! Closed-form steady states and harmonic amplitudes.
//!
//! These are the oracles the numerical dynamics are checked against. The
//! two-tone and squeezed solutions are quasi-static: they treat `δω t` as a
//! frozen phase on the `1/Γ` timescale, so they become exact as `δω → 0`.
//!
//! Harmonic index convention: `S_n` is the coefficient of `e^{−inδωt}` in the
//! rotating-frame `⟨σ₋⟩`, i.e. lab frequency `ω_d + nδω`.

use std::collections::BTreeMap;

use num_complex::Complex64 as C64;

use crate::model::{BlochState, EnvelopeMode, FockSource, FrameConfig, QubitParams, SqueezedBath, TwoTone};
use crate::spectra::SpectrumTable;

const I: C64 = C64::new(0.0, 1.0);

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum AnalyticError {
    #[error("unphysical mixing angle: arcsin argument {0} > 1")]
    UnphysicalMixingAngle(f64),
    #[error("mixing amplitude undefined for omega1 * omega2 = 0; use the single-drive solution")]
    NoMixing,
    #[error("even harmonic {0} vanishes identically for two classical tones")]
    EvenHarmonic(i32),
    #[error("steady-state denominator vanishes (|D| = {0:e})")]
    SingularDenominator(f64),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Mixing amplitude `Λ` and angle `ϑ` of the two-tone series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoToneMixing {
    pub lambda_mix: C64,
    pub theta_mix: f64,
}

impl TwoToneMixing {
    pub fn new(tt: &TwoTone, q: &QubitParams, f: &FrameConfig) -> Result<Self, AnalyticError> {
        let gamma = q.gamma();
        Ok(TwoToneMixing {
            lambda_mix: lambda_mix(tt.omega1, tt.omega2, f.big_delta, gamma, q.gamma_rad)?,
            theta_mix: theta_mix(tt.omega1, tt.omega2, f.big_delta, gamma, q.gamma_rad)?,
        })
    }

    /// Ratio of consecutive side peaks, `−tan(ϑ/2)`.
    pub fn ratio(&self) -> f64 {
        -(0.5 * self.theta_mix).tan()
    }
}

/// `ϑ = arcsin[2γΩ₁Ω₂ / (Γ(Δω² + γ²) + γ(Ω₁² + Ω₂²))]`.
pub fn theta_mix(omega1: f64, omega2: f64, big_delta: f64, gamma: f64, gamma_rad: f64) -> Result<f64, AnalyticError> {
    let num = 2.0 * gamma * omega1 * omega2;
    let den = gamma_rad * (big_delta * big_delta + gamma * gamma) + gamma * (omega1 * omega1 + omega2 * omega2);
    let s = num / den;
    if !(s <= 1.0) {
        return Err(AnalyticError::UnphysicalMixingAngle(s));
    }
    Ok(s.asin())
}

/// `Λ = 4γΩ₁Ω₂ / (Γ(Δω + iγ))`.
pub fn lambda_mix(omega1: f64, omega2: f64, big_delta: f64, gamma: f64, gamma_rad: f64) -> Result<C64, AnalyticError> {
    if omega1 * omega2 == 0.0 {
        return Err(AnalyticError::NoMixing);
    }
    Ok(C64::from(4.0 * gamma * omega1 * omega2) / (gamma_rad * C64::new(big_delta, gamma)))
}

fn saturation(q: &QubitParams, f: &FrameConfig, intensity: f64) -> f64 {
    let gamma = q.gamma();
    1.0 / (1.0 + gamma / q.gamma_rad * intensity / (f.big_delta * f.big_delta + gamma * gamma))
}

/// Quasi-static two-tone solution at time `t`.
pub fn two_tone_steady(t: f64, tt: &TwoTone, q: &QubitParams, f: &FrameConfig) -> BlochState {
    let gamma = q.gamma();
    let x = f.delta_w * t;
    let (o1, o2) = (tt.omega1, tt.omega2);
    let intensity = o1 * o1 + o2 * o2 + 2.0 * o1 * o2 * (2.0 * x).cos();
    let sat = saturation(q, f, intensity);
    let field = o1 * C64::from_polar(1.0, -x) + o2 * C64::from_polar(1.0, x);
    BlochState { sm: 0.5 * field / C64::new(f.big_delta, -gamma) * sat, sz: -sat }
}

/// Amplitude of harmonic `n` (odd) from the geometric series.
pub fn two_tone_component(n: i32, tt: &TwoTone, mix: &TwoToneMixing) -> Result<C64, AnalyticError> {
    if n % 2 == 0 {
        return Err(AnalyticError::EvenHarmonic(n));
    }
    let r = mix.ratio();
    let pre = mix.theta_mix.tan() / mix.lambda_mix;
    let p1 = ((n - 1) / 2).unsigned_abs() as i32;
    let p2 = ((n + 1) / 2).unsigned_abs() as i32;
    Ok(pre * (tt.omega1 * r.powi(p1) + tt.omega2 * r.powi(p2)))
}

/// Odd harmonics `|n| ≤ 2 p_max + 1` of the two-tone solution.
pub fn two_tone_spectrum(
    tt: &TwoTone,
    q: &QubitParams,
    f: &FrameConfig,
    p_max: u32,
) -> Result<SpectrumTable, AnalyticError> {
    let mix = TwoToneMixing::new(tt, q, f)?;
    let top = 2 * p_max as i32 + 1;
    let mut entries = BTreeMap::new();
    for n in (-top..=top).step_by(2) {
        entries.insert(n, two_tone_component(n, tt, &mix)?);
    }
    Ok(SpectrumTable::analytic(f.delta_w, entries))
}

/// Quasi-static solution with a classical tone and a squeezed bath.
pub fn squeezed_steady(
    t: f64,
    sq: &SqueezedBath,
    q: &QubitParams,
    f: &FrameConfig,
) -> Result<BlochState, AnalyticError> {
    let gamma = q.gamma();
    let k = 2.0 * sq.n_bath + 1.0;
    let x = f.delta_w * t;
    let drive = gamma * sq.omega1 * sq.omega1 / q.gamma_rad;
    // 1 + (M e^{4ix} + M* e^{-4ix}) / (2N+1), real
    let modulation = 1.0 + 2.0 * (sq.m_bath * C64::from_polar(1.0, 4.0 * x)).re / k;
    let den = f.big_delta * f.big_delta + gamma * gamma * sq.pair_discriminant() + drive * modulation;
    if !(den.abs() > 1e-300) || !den.is_finite() {
        return Err(AnalyticError::SingularDenominator(den.abs()));
    }
    let sz = -1.0 / k + drive * modulation / (k * den);
    let num = C64::new(f.big_delta / k, gamma) * C64::from_polar(1.0, -x)
        + I * gamma * 2.0 * sq.m_bath / k * C64::from_polar(1.0, 3.0 * x);
    Ok(BlochState { sm: 0.5 * sq.omega1 * num / den, sz })
}

/// Harmonics `|n| ≤ n_max` of the quasi-static squeezed solution, by
/// quadrature of the closed form over one beat.
pub fn squeezed_spectrum(
    sq: &SqueezedBath,
    q: &QubitParams,
    f: &FrameConfig,
    n_max: u32,
) -> Result<SpectrumTable, AnalyticError> {
    const SAMPLES: usize = 4096;
    let dt = f.beat_period() / SAMPLES as f64;
    let values =
        (0..SAMPLES).map(|k| squeezed_steady(k as f64 * dt, sq, q, f).map(|b| b.sm)).collect::<Result<Vec<_>, _>>()?;
    let top = n_max as i32;
    let entries = (-top..=top)
        .map(|n| {
            let s: C64 = values
                .iter()
                .enumerate()
                .map(|(k, v)| v * C64::from_polar(1.0, n as f64 * f.delta_w * k as f64 * dt))
                .sum();
            (n, s / SAMPLES as f64)
        })
        .collect();
    Ok(SpectrumTable::analytic(f.delta_w, entries))
}

/// Weak-drive parameters `f` and `m` of the squeezed series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezedWeakDrive {
    pub f: f64,
    pub m: C64,
}

impl SqueezedWeakDrive {
    /// Above this `f` the leading-order series is a poor guide.
    pub const WEAK_LIMIT: f64 = 0.3;

    pub fn new(sq: &SqueezedBath, q: &QubitParams) -> Result<Self, AnalyticError> {
        let disc = sq.pair_discriminant();
        if !(disc > 0.0) {
            return Err(AnalyticError::SingularDenominator(disc));
        }
        Ok(SqueezedWeakDrive {
            f: sq.omega1 / (2.0 * q.gamma_rad * q.gamma() * disc).sqrt(),
            m: 2.0 * sq.m_bath / (2.0 * sq.n_bath + 1.0),
        })
    }

    pub fn is_weak(&self) -> bool {
        self.f < Self::WEAK_LIMIT
    }

    /// Leading-order series coefficient for `n = 1 − 4k` (without the
    /// common prefactor `i f Γ/Ω₁` and without the overall factor `f`).
    fn series_term(&self, k: i32) -> C64 {
        let f2 = self.f * self.f;
        if k >= 1 {
            let sign = if (k - 1) % 2 == 0 { 1.0 } else { -1.0 };
            sign * f2.powi(k - 1) * self.m.powi(k)
        } else {
            (-f2 * self.m.conj()).powi(-k)
        }
    }
}

/// Leading-order weak-drive amplitudes at `n ≡ 1 (mod 4)`, `|n| ≤ n_max`.
///
/// Valid at `Δω = 0` and `Γ_φ = 0`; every other index is absent.
pub fn squeezed_weak_spectrum(
    sq: &SqueezedBath,
    q: &QubitParams,
    frame: &FrameConfig,
    n_max: u32,
) -> Result<SpectrumTable, AnalyticError> {
    if frame.big_delta != 0.0 {
        return Err(AnalyticError::Precondition(format!(
            "weak-drive series needs big_delta = 0, got {}",
            frame.big_delta
        )));
    }
    if q.gamma_phi != 0.0 {
        return Err(AnalyticError::Precondition(format!("weak-drive series needs gamma_phi = 0, got {}", q.gamma_phi)));
    }
    let weak = SqueezedWeakDrive::new(sq, q)?;
    // i f Γ/Ω₁ · f  =  i Ω₁ / (2γ[(2N+1)² − 4|M|²])
    let prefactor = I * sq.omega1 / (2.0 * q.gamma() * sq.pair_discriminant());
    let top = n_max as i32;
    let mut entries = BTreeMap::new();
    for n in -top..=top {
        if (n - 1).rem_euclid(4) != 0 {
            continue;
        }
        let k = (1 - n) / 4;
        let amp = prefactor * weak.series_term(k);
        if amp != C64::new(0.0, 0.0) || n == 1 {
            entries.insert(n, amp);
        }
    }
    Ok(SpectrumTable::analytic(frame.delta_w, entries))
}

/// Steady state under the `ω₁` tone alone, evaluated at time `t`.
pub fn single_drive_steady(omega1: f64, q: &QubitParams, f: &FrameConfig, t: f64) -> BlochState {
    two_tone_steady(t, &TwoTone { omega1, omega2: 0.0 }, q, f)
}

/// Emitter mean values right after pulse `n`: `⟨σ₋ᵉ⟩` (rotating frame) and
/// `⟨σ_zᵉ⟩ = 2ν − 1`.
pub fn emitter_pulse_state(nu: f64, n: i64, period: f64, f: &FrameConfig) -> (C64, f64) {
    let half_sin = (nu * (1.0 - nu)).max(0.0).sqrt();
    // ω₂ = ω_d − δω, so e^{−iω₂Tn} carries e^{+iδωTn} in the rotating frame.
    (C64::from_polar(half_sin, f.delta_w * period * n as f64), 2.0 * nu - 1.0)
}

/// Factorized correlators `⟨σ_zσ₋ᵉ⟩` and `⟨σ₋σ₊ᵉ⟩` at pulse `n`.
pub fn pulse_correlators(fk: &FockSource, q: &QubitParams, f: &FrameConfig, n: i64) -> (C64, C64) {
    let t = fk.period * n as f64;
    let qubit = single_drive_steady(fk.omega1, q, f, t);
    let (emitter, _) = emitter_pulse_state(fk.nu, n, fk.period, f);
    (qubit.sz * emitter, qubit.sm * emitter.conj())
}

/// Period averages of the two correlator envelopes.
///
/// Returns `(⟨g⟩, ⟨h⟩)`: `g` multiplies `⟨σ_zσ₋ᵉ⟩` and `h` multiplies
/// `⟨σ₋σ₊ᵉ⟩` together with its in-period phase `e^{i(δω − Δω)τ}`.
pub fn envelope_averages(fk: &FockSource, q: &QubitParams, f: &FrameConfig) -> (C64, C64) {
    let t = fk.period;
    let detune = f.delta_w - f.big_delta;
    // (1/T) ∫₀^L e^{(−r + iκ)τ} dτ
    let avg = |r: f64, kappa: f64, len: f64| -> C64 {
        let z = C64::new(-r, kappa);
        if z.norm() * len < 1e-8 {
            return C64::from(len / t);
        }
        ((z * len).exp() - 1.0) / (z * t)
    };
    match fk.envelope_mode {
        EnvelopeMode::Exact => (avg(q.gamma_rad + fk.gamma_e, 0.0, t), avg(q.gamma() + fk.gamma_e, detune, t)),
        EnvelopeMode::Step => {
            let len = fk.cutoff().min(t);
            (avg(0.0, 0.0, len), avg(0.0, detune, len))
        }
    }
}

/// Leading-order Fock-case amplitudes at `Δω = 0`.
///
/// `c1`, `cm1`, `cm3` multiply `e^{+iδωt}`, `e^{−iδωt}` and `e^{−3iδωt}`, so
/// they correspond to `S_{−1}`, `S_1` and `S_3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockCoeffs {
    /// `−√(γₑ/γ) sinθ/2`, the in-pulse amplitude.
    pub c1: C64,
    /// `iΩ₁/2γ`.
    pub cm1: C64,
    /// Printed third coefficient with its bracket averaged over one period.
    pub cm3: C64,
    /// Period averages consistent with the correlator sign convention in
    /// use; these are what a rectangular window over whole beats measures.
    pub averaged: FockAveraged,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockAveraged {
    pub c1: C64,
    pub cm3: C64,
}

pub fn fock_coeffs(fk: &FockSource, q: &QubitParams, f: &FrameConfig) -> Result<FockCoeffs, AnalyticError> {
    if f.big_delta != 0.0 {
        return Err(AnalyticError::Precondition(format!(
            "Fock coefficients are only known at big_delta = 0, got {}",
            f.big_delta
        )));
    }
    let gamma = q.gamma();
    let half_sin = 0.5 * fk.sin_theta();
    let c1 = C64::from(-(fk.gamma_e / gamma).sqrt() * half_sin);
    let cm1 = I * fk.omega1 / (2.0 * gamma);
    let prefactor =
        fk.omega1 * fk.omega1 / (2.0 * gamma * gamma) * (gamma * fk.gamma_e).sqrt() / q.gamma_rad * half_sin;
    let (g, h) = envelope_averages(fk, q, f);
    let cm3 = prefactor * (h + g);
    let averaged = if fk.literal_sign {
        FockAveraged { c1: -c1 * g, cm3: prefactor * (g.conj() - I * h) }
    } else {
        FockAveraged { c1: c1 * g, cm3: prefactor * (h - g.conj()) }
    };
    Ok(FockCoeffs { c1, cm1, cm3, averaged })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn fig1() -> (TwoTone, QubitParams, FrameConfig) {
        (TwoTone { omega1: 0.15, omega2: 0.15 }, QubitParams::radiative(), FrameConfig::new(0.002, 0.0).unwrap())
    }

    #[test]
    fn theta_at_fig1() {
        let th = theta_mix(0.15, 0.15, 0.0, 0.5, 1.0).unwrap();
        assert_abs_diff_eq!(th.sin(), 0.0225 / 0.2725, epsilon = 1e-15);
        assert_abs_diff_eq!(th.sin(), 0.082569, epsilon = 1e-6);
        assert_eq!(theta_mix(0.15, 0.0, 0.0, 0.5, 1.0).unwrap(), 0.0);
        let a = theta_mix(0.1, 0.3, 0.2, 0.5, 1.0).unwrap();
        let b = theta_mix(0.3, 0.1, 0.2, 0.5, 1.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn theta_rejects_inconsistent_inputs() {
        // a negative rate makes the denominator small enough to exceed 1
        assert!(matches!(theta_mix(1.0, 1.0, 0.0, 0.5, -0.9), Err(AnalyticError::UnphysicalMixingAngle(_))));
    }

    #[test]
    fn lambda_at_fig1() {
        let l = lambda_mix(0.15, 0.15, 0.0, 0.5, 1.0).unwrap();
        assert_abs_diff_eq!(l.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(l.im, -0.09, epsilon = 1e-15);
        assert_eq!(lambda_mix(0.0, 0.15, 0.0, 0.5, 1.0), Err(AnalyticError::NoMixing));
        let far = lambda_mix(0.15, 0.15, 1e9, 0.5, 1.0).unwrap();
        assert!(far.norm() < 1e-9);
        let k = 1.7;
        let a = lambda_mix(0.1 * k, 0.2 * k, 0.3, 0.5, 1.0).unwrap();
        let b = lambda_mix(0.1, 0.2, 0.3, 0.5, 1.0).unwrap() * k * k;
        assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn single_drive_values() {
        let (_, q, f) = fig1();
        let s = two_tone_steady(12.3, &TwoTone { omega1: 0.15, omega2: 0.0 }, &q, &f);
        let phase = C64::from_polar(1.0, 0.002 * 12.3);
        let sm0 = s.sm * phase;
        assert_abs_diff_eq!(sm0.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(sm0.im, 0.15 / 1.045, epsilon = 1e-15);
        assert_abs_diff_eq!(sm0.im, 0.143540, epsilon = 1e-6);
        assert_abs_diff_eq!(s.sz, -1.0 / 1.045, epsilon = 1e-15);
        assert_abs_diff_eq!(s.sz, -0.956938, epsilon = 1e-6);

        let g = two_tone_steady(3.0, &TwoTone { omega1: 0.0, omega2: 0.0 }, &q, &f);
        assert_eq!(g, BlochState::GROUND);

        let d = single_drive_steady(0.15, &q, &f, 12.3);
        assert_eq!(d, s);
    }

    #[test]
    fn two_tone_steady_beat_periodic() {
        let (tt, q, f) = fig1();
        let half = std::f64::consts::PI / f.delta_w;
        for t in [0.0, 17.0, 901.3] {
            let a = two_tone_steady(t, &tt, &q, &f);
            let b = two_tone_steady(t + half, &tt, &q, &f);
            assert!(a.sup_dist(&BlochState { sm: -b.sm, sz: b.sz }) < 1e-12);
            // full period 2π/(2δω) for sz; sm picks up e^{∓iπ} = −1
            assert_abs_diff_eq!(a.sz, b.sz, epsilon = 1e-12);
        }
    }

    #[test]
    fn series_matches_pointwise_solution() {
        let (_, q, _) = fig1();
        let f = FrameConfig::new(0.013, 0.21).unwrap();
        let tt = TwoTone { omega1: 0.31, omega2: 0.22 };
        let table = two_tone_spectrum(&tt, &q, &f, 40).unwrap();
        for j in 0..200 {
            let t = 37.1 * j as f64;
            let direct = two_tone_steady(t, &tt, &q, &f).sm;
            let series = table.evaluate(t);
            assert!((direct - series).norm() <= 1e-10 * direct.norm(), "t={t}");
        }
    }

    #[test]
    fn two_tone_geometric_decay() {
        let (tt, q, f) = fig1();
        let table = two_tone_spectrum(&tt, &q, &f, 5).unwrap();
        let mix = TwoToneMixing::new(&tt, &q, &f).unwrap();
        for n in [3, 5, 7, 9] {
            let r = table.get(n + 2).unwrap() / table.get(n).unwrap();
            assert_abs_diff_eq!(r.re, mix.ratio(), epsilon = 1e-14);
            assert_abs_diff_eq!(r.im, 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!((table.get(n).unwrap() - table.get(-n).unwrap()).norm(), 0.0, epsilon = 1e-15);
        }
        assert_eq!(table.entries.keys().copied().collect::<Vec<_>>(), vec![-11, -9, -7, -5, -3, -1, 1, 3, 5, 7, 9, 11]);
        assert!(matches!(two_tone_component(2, &tt, &mix), Err(AnalyticError::EvenHarmonic(2))));
    }

    #[test]
    fn squeezed_without_drive() {
        let (_, q, f) = fig1();
        let sq = SqueezedBath::pure(0.0, 2.0);
        for t in [0.0, 100.0, 777.7] {
            let s = squeezed_steady(t, &sq, &q, &f).unwrap();
            assert_eq!(s.sm, C64::new(0.0, 0.0));
            assert_abs_diff_eq!(s.sz, -0.2, epsilon = 1e-15);
        }
    }

    #[test]
    fn squeezed_vacuum_limit_is_single_drive() {
        let q = QubitParams::new(1.0, 0.1).unwrap();
        let f = FrameConfig::new(0.01, 0.37).unwrap();
        let sq = SqueezedBath { omega1: 0.4, n_bath: 0.0, m_bath: C64::new(0.0, 0.0) };
        for j in 0..50 {
            let t = 13.7 * j as f64;
            let a = squeezed_steady(t, &sq, &q, &f).unwrap();
            let b = single_drive_steady(0.4, &q, &f, t);
            assert!(a.sup_dist(&b) < 1e-12);
        }
    }

    #[test]
    fn squeezed_quarter_beat_periodic() {
        let (_, q, f) = fig1();
        let sq = SqueezedBath { omega1: 0.15, n_bath: 1.0, m_bath: C64::new(0.9, 0.6) };
        let quarter = std::f64::consts::FRAC_PI_2 / f.delta_w;
        for t in [0.0, 5.0, 250.0] {
            let a = squeezed_steady(t, &sq, &q, &f).unwrap();
            let b = squeezed_steady(t + quarter, &sq, &q, &f).unwrap();
            assert_abs_diff_eq!(a.sz, b.sz, epsilon = 1e-12);
            // sm carries e^{-iδωt}: a quarter period rotates it by −π/2
            assert!((a.sm * C64::new(0.0, -1.0) - b.sm).norm() < 1e-12);
        }
    }

    #[test]
    fn weak_series_structure() {
        let q = QubitParams::radiative();
        let f = FrameConfig::new(0.002, 0.0).unwrap();
        let sq = SqueezedBath::pure(0.15, 2.0);
        let weak = SqueezedWeakDrive::new(&sq, &q).unwrap();
        assert_abs_diff_eq!(weak.f, 0.15, epsilon = 1e-12);
        assert_abs_diff_eq!(weak.m.re, 2.0 * 6f64.sqrt() / 5.0, epsilon = 1e-12);

        let t = squeezed_weak_spectrum(&sq, &q, &f, 11).unwrap();
        assert_eq!(t.entries.keys().copied().collect::<Vec<_>>(), vec![-11, -7, -3, 1, 5, 9]);
        let ratio = t.get(-3).unwrap() / t.get(1).unwrap();
        assert_abs_diff_eq!(ratio.norm(), weak.m.norm(), epsilon = 1e-14);
        // −f³m* and −f³m² relative to the leading f
        let r5 = t.get(5).unwrap() / t.get(1).unwrap();
        assert!((r5 + weak.f * weak.f * weak.m.conj()).norm() < 1e-14);
        let r7 = t.get(-7).unwrap() / t.get(1).unwrap();
        assert!((r7 + weak.f * weak.f * weak.m * weak.m).norm() < 1e-14);

        let vac = SqueezedBath { omega1: 0.15, n_bath: 1.0, m_bath: C64::new(0.0, 0.0) };
        let t = squeezed_weak_spectrum(&vac, &q, &f, 9).unwrap();
        assert_eq!(t.entries.keys().copied().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn weak_series_approaches_exact_solution() {
        let q = QubitParams::radiative();
        let f = FrameConfig::new(0.002, 0.0).unwrap();
        // leading order: relative corrections are O(f²)
        let worst = |omega1: f64| {
            let sq = SqueezedBath { omega1, n_bath: 0.5, m_bath: C64::new(0.3, 0.4) };
            let f2 = SqueezedWeakDrive::new(&sq, &q).unwrap().f.powi(2);
            let table = squeezed_weak_spectrum(&sq, &q, &f, 7).unwrap();
            let rel = (0..20)
                .map(|j| {
                    let t = 91.0 * j as f64;
                    let exact = squeezed_steady(t, &sq, &q, &f).unwrap().sm;
                    (table.evaluate(t) - exact).norm() / exact.norm()
                })
                .fold(0.0, f64::max);
            assert!(rel < 5.0 * f2, "rel {rel}, f^2 {f2}");
            rel
        };
        let (a, b) = (worst(0.02), worst(0.01));
        assert_abs_diff_eq!(a / b, 4.0, epsilon = 0.1);
    }

    #[test]
    fn weak_series_preconditions() {
        let sq = SqueezedBath::pure(0.1, 1.0);
        let f = FrameConfig::new(0.002, 0.1).unwrap();
        assert!(squeezed_weak_spectrum(&sq, &QubitParams::radiative(), &f, 7).is_err());
        let f = FrameConfig::new(0.002, 0.0).unwrap();
        let q = QubitParams::new(1.0, 0.1).unwrap();
        assert!(squeezed_weak_spectrum(&sq, &q, &f, 7).is_err());
    }

    #[test]
    fn emitter_state() {
        let f = FrameConfig::new(0.002, 0.0).unwrap();
        let (s, z) = emitter_pulse_state(0.5, 3, 10.0, &f);
        assert_abs_diff_eq!(s.norm(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(s.arg(), 0.06, epsilon = 1e-15);
        assert_eq!(z, 0.0);
        assert_eq!(emitter_pulse_state(0.0, 1, 10.0, &f).0.norm(), 0.0);
        assert_eq!(emitter_pulse_state(1.0, 1, 10.0, &f).0.norm(), 0.0);
    }

    #[test]
    fn correlators_at_pulse() {
        let q = QubitParams::radiative();
        let f = FrameConfig::new(0.002, 0.0).unwrap();
        let fk = FockSource::new(0.15, 0.5, 0.5, 10.0);
        let (zc, pc) = pulse_correlators(&fk, &q, &f, 4);
        assert_abs_diff_eq!(zc.norm(), 0.5 / 1.045, epsilon = 1e-14);
        assert_abs_diff_eq!(zc.norm(), 0.478469, epsilon = 1e-6);
        assert_abs_diff_eq!(pc.norm(), 0.5 * 0.15 / 1.045, epsilon = 1e-14);
        assert_abs_diff_eq!(pc.norm(), 0.071770, epsilon = 1e-6);
        // zc keeps the negative sign of ⟨σ_z⟩
        let (e, _) = emitter_pulse_state(0.5, 4, 10.0, &f);
        assert!((zc / e).re < 0.0);

        let none = FockSource { nu: 0.0, ..fk };
        let (zc, pc) = pulse_correlators(&none, &q, &f, 2);
        assert_eq!((zc.norm(), pc.norm()), (0.0, 0.0));

        let dark = FockSource { omega1: 0.0, ..fk };
        let (zc, pc) = pulse_correlators(&dark, &q, &f, 0);
        assert_abs_diff_eq!(zc.re, -0.5, epsilon = 1e-15);
        assert_eq!(pc.norm(), 0.0);
    }

    #[test]
    fn fock_leading_coefficients() {
        let q = QubitParams::radiative();
        let f = FrameConfig::new(0.002, 0.0).unwrap();
        let fk = FockSource::new(0.15, 0.5, 0.5, 10.0);
        let c = fock_coeffs(&fk, &q, &f).unwrap();
        assert_abs_diff_eq!(c.c1.re, -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(c.cm1.im, 0.15, epsilon = 1e-15);
        assert!(c.cm3.norm() > 0.0);

        for nu in [0.0, 1.0] {
            let c = fock_coeffs(&FockSource { nu, ..fk }, &q, &f).unwrap();
            assert_eq!(c.c1.norm(), 0.0);
            assert_eq!(c.cm3.norm(), 0.0);
            assert!(c.cm1.norm() > 0.0);
        }

        // quadratic in Ω₁
        let a = fock_coeffs(&FockSource { omega1: 0.01, ..fk }, &q, &f).unwrap().cm3.norm();
        let b = fock_coeffs(&FockSource { omega1: 0.02, ..fk }, &q, &f).unwrap().cm3.norm();
        assert_abs_diff_eq!(b / a, 4.0, epsilon = 1e-12);

        let off = FrameConfig::new(0.002, 0.3).unwrap();
        assert!(fock_coeffs(&fk, &q, &off).is_err());
    }

    #[test]
    fn envelope_average_closed_forms() {
        let q = QubitParams::radiative();
        let f = FrameConfig::new(0.002, 0.0).unwrap();
        let fk = FockSource::new(0.15, 0.5, 0.5, 10.0);
        let (g, h) = envelope_averages(&fk, &q, &f);
        // brute-force midpoint quadrature
        let n = 200_000;
        let d = fk.period / n as f64;
        let (mut gs, mut hs) = (0.0, C64::new(0.0, 0.0));
        for j in 0..n {
            let tau = (j as f64 + 0.5) * d;
            gs += (-1.5 * tau).exp() * d;
            hs += C64::from_polar((-tau).exp(), 0.002 * tau) * d;
        }
        assert_abs_diff_eq!(g.re, gs / fk.period, epsilon = 1e-9);
        assert!((h - hs / fk.period).norm() < 1e-9);

        let step = FockSource { envelope_mode: EnvelopeMode::Step, ..fk };
        let (g, _) = envelope_averages(&step, &q, &f);
        assert_abs_diff_eq!(g.re, 0.2, epsilon = 1e-12);
    }
}
