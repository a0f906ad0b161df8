// Copyright 2026 The qmix Authors
// SPDX-License-Identifier: Apache-2.0

//! Lindblad master equation for a 2x2 density matrix.
//!
//! Written with explicit operator algebra so it shares no code with the
//! Bloch right-hand sides. Basis index 0 is `|g⟩`, 1 is `|e⟩`, and
//! `σ₋ = |g⟩⟨e|`.

use num_complex::Complex64 as C64;

use super::integrate::Grid;
use super::rhs::{Equations, RhsKind};
use crate::model::{BlochState, Trajectory, EPS_PHYS};

type M2 = [[C64; 2]; 2];

const Z: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

const SM: M2 = [[Z, ONE], [Z, Z]];
const SP: M2 = [[Z, Z], [ONE, Z]];
const SZ: M2 = [[C64::new(-1.0, 0.0), Z], [Z, ONE]];

fn mul(a: &M2, b: &M2) -> M2 {
    let mut r = [[Z; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    r
}

fn add(a: &M2, b: &M2) -> M2 {
    [[a[0][0] + b[0][0], a[0][1] + b[0][1]], [a[1][0] + b[1][0], a[1][1] + b[1][1]]]
}

fn scale(k: C64, a: &M2) -> M2 {
    a.map(|row| row.map(|v| k * v))
}

fn dagger(a: &M2) -> M2 {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

fn commutator(a: &M2, b: &M2) -> M2 {
    add(&mul(a, b), &scale(-ONE, &mul(b, a)))
}

/// `L ρ L† − ½{L†L, ρ}`.
fn dissipator(l: &M2, rho: &M2) -> M2 {
    let ld = dagger(l);
    let ldl = mul(&ld, l);
    let jump = mul(&mul(l, rho), &ld);
    let anti = add(&mul(&ldl, rho), &mul(rho, &ldl));
    add(&jump, &scale(C64::new(-0.5, 0.0), &anti))
}

/// Density matrix through its excited population and coherence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2 {
    pub rho_ee: f64,
    /// `⟨g|ρ|e⟩`.
    pub rho_ge: C64,
}

impl DensityMatrix2 {
    pub const GROUND: DensityMatrix2 = DensityMatrix2 { rho_ee: 0.0, rho_ge: Z };

    pub fn from_bloch(b: &BlochState) -> Self {
        DensityMatrix2 { rho_ee: 0.5 * (1.0 + b.sz), rho_ge: b.sm.conj() }
    }

    /// `⟨σ₋⟩ = Tr(σ₋ρ) = ⟨e|ρ|g⟩`, `⟨σ_z⟩ = 2ρ_ee − 1`.
    pub fn to_bloch(&self) -> BlochState {
        BlochState::new(self.rho_ge.conj(), 2.0 * self.rho_ee - 1.0)
    }

    pub fn is_positive(&self, eps: f64) -> bool {
        self.rho_ge.norm_sqr() <= self.rho_ee * (1.0 - self.rho_ee) + eps
    }

    fn matrix(&self) -> M2 {
        [[C64::from(1.0 - self.rho_ee), self.rho_ge], [self.rho_ge.conj(), C64::from(self.rho_ee)]]
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("density matrix lost positivity at t = {t}: rho_ee = {rho_ee:.3e}, |rho_ge|^2 = {coh:.3e}")]
    NotPositive { t: f64, rho_ee: f64, coh: f64 },
    #[error("trace drifted to {trace} at t = {t}")]
    TraceDrift { t: f64, trace: f64 },
    #[error("{0}")]
    Grid(#[from] super::integrate::IntegrateError),
}

/// Generator `dρ/dt` at time `t`, Fock correlators decaying from `pulse`.
fn generator(eq: &Equations, rho: &M2, t: f64, pulse: i64) -> M2 {
    let q = &eq.qubit;
    let f = &eq.frame;
    let e = C64::from_polar(1.0, -f.delta_w * t);
    let (omega1, omega2) = match eq.rhs {
        RhsKind::TwoTone(tt) => (tt.omega1, tt.omega2),
        RhsKind::Squeezed(sq) => (sq.omega1, 0.0),
        RhsKind::Fock(fk) => (fk.omega1, 0.0),
    };
    // H = (Δω/2)σz + ½(Ω σ₊ + Ω* σ₋), Ω = −(Ω₁e^{−iδωt} + Ω₂e^{iδωt})
    let rabi = -(omega1 * e + omega2 * e.conj());
    let h =
        add(&scale(C64::from(0.5 * f.big_delta), &SZ), &add(&scale(0.5 * rabi, &SP), &scale(0.5 * rabi.conj(), &SM)));
    let mut d = scale(-I, &commutator(&h, rho));
    let (n_bath, m_bath) = match eq.rhs {
        RhsKind::Squeezed(sq) => (sq.n_bath, sq.m_bath),
        _ => (0.0, Z),
    };
    let th = 1.0 + 2.0 * n_bath;
    d = add(&d, &scale(C64::from(q.gamma_rad * (n_bath + 1.0)), &dissipator(&SM, rho)));
    if n_bath > 0.0 {
        d = add(&d, &scale(C64::from(q.gamma_rad * n_bath), &dissipator(&SP, rho)));
    }
    d = add(&d, &scale(C64::from(0.5 * q.gamma_phi * th), &dissipator(&SZ, rho)));
    if m_bath != Z {
        let c = -2.0 * q.gamma() * m_bath * e.conj() * e.conj();
        let x = scale(c, &mul(&mul(&SP, rho), &SP));
        d = add(&d, &add(&x, &dagger(&x)));
    }
    if let Some(drive) = &eq.drive {
        let (zc, pc) = drive.at_pulse(t, pulse);
        let s_m = drive.coupling * zc;
        let s_z = 4.0 * drive.coupling * pc.re;
        let src: M2 = [[C64::from(-0.5 * s_z), s_m.conj()], [s_m, C64::from(0.5 * s_z)]];
        d = add(&d, &src);
    }
    d
}

/// Evolves `rho0` under the same model as `eq` on `grid` (same pulse
/// anchoring as the Bloch integrator) and converts to Bloch means.
pub fn density_matrix_oracle(eq: &Equations, rho0: DensityMatrix2, grid: Grid) -> Result<Trajectory, OracleError> {
    let dt = grid.dt;
    let stride = grid.stride.max(1);
    let period = eq.pulse_period();
    let mut rho = rho0.matrix();
    let mut samples = vec![rho0.to_bloch()];
    let mut max_excess = rho0.to_bloch().bloch_norm_sqr() - 1.0;
    let half = C64::from(0.5 * dt);
    let full = C64::from(dt);
    for k in 0..grid.steps {
        let t = grid.t0 + dt * k as f64;
        let pulse = period.map_or(0, |p| ((t + 0.5 * dt) / p).floor() as i64);
        let k1 = generator(eq, &rho, t, pulse);
        let k2 = generator(eq, &add(&rho, &scale(half, &k1)), t + 0.5 * dt, pulse);
        let k3 = generator(eq, &add(&rho, &scale(half, &k2)), t + 0.5 * dt, pulse);
        let k4 = generator(eq, &add(&rho, &scale(full, &k3)), t + dt, pulse);
        let incr = add(&add(&k1, &k4), &scale(C64::from(2.0), &add(&k2, &k3)));
        rho = add(&rho, &scale(C64::from(dt / 6.0), &incr));
        let trace = (rho[0][0] + rho[1][1]).re;
        if (trace - 1.0).abs() > 1e-12 {
            return Err(OracleError::TraceDrift { t: t + dt, trace });
        }
        let dm = DensityMatrix2 { rho_ee: rho[1][1].re, rho_ge: rho[0][1] };
        if !dm.is_positive(EPS_PHYS) {
            return Err(OracleError::NotPositive { t: t + dt, rho_ee: dm.rho_ee, coh: dm.rho_ge.norm_sqr() });
        }
        let b = dm.to_bloch();
        max_excess = max_excess.max(b.bloch_norm_sqr() - 1.0);
        if (k + 1) % stride == 0 {
            samples.push(b);
        }
    }
    Ok(Trajectory { t0: grid.t0, dt: dt * stride as f64, samples, frame: eq.frame, max_purity_excess: max_excess })
}
