// Copyright 2026 The qmix Authors
// SPDX-License-Identifier: Apache-2.0

//! Fixed-step classical Runge-Kutta.

use super::rhs::Equations;
use crate::model::{BlochState, Trajectory};

/// Largest accepted `dt · stiffness`.
pub const MAX_STEP_STIFFNESS: f64 = 0.5;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum IntegrateError {
    #[error("step dt = {dt} too large: dt * stiffness = {ratio} > {MAX_STEP_STIFFNESS}")]
    StepTooLarge { dt: f64, ratio: f64 },
    #[error("invalid step or span: {0}")]
    BadSpan(String),
    #[error("state became non-finite at step {step} (t = {t}): {state:?}")]
    NonFinite { step: usize, t: f64, state: BlochState },
}

/// Integration grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub t0: f64,
    pub dt: f64,
    pub steps: usize,
    /// Record every `stride`-th state.
    pub stride: usize,
}

impl Grid {
    /// Covers `[t0, t1]` with steps no longer than `dt`; for pulsed drives
    /// `dt` is shortened so that `period` is a whole number of steps.
    pub fn covering(t_span: (f64, f64), dt: f64, period: Option<f64>) -> Result<Grid, IntegrateError> {
        let (t0, t1) = t_span;
        if !(dt > 0.0 && dt.is_finite() && t0.is_finite() && t1.is_finite()) {
            return Err(IntegrateError::BadSpan(format!("dt = {dt}, span = {t_span:?}")));
        }
        if t1 - t0 < dt {
            return Err(IntegrateError::BadSpan(format!("span {t_span:?} shorter than dt = {dt}")));
        }
        let dt = match period {
            Some(p) => p / (p / dt * (1.0 - 1e-12)).ceil(),
            None => dt,
        };
        let steps = ((t1 - t0) / dt - 1e-9).ceil() as usize;
        Ok(Grid { t0, dt, steps, stride: 1 })
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.stride = stride.max(1);
        self
    }

    pub fn t_end(&self) -> f64 {
        self.t0 + self.dt * self.steps as f64
    }
}

/// One RK4 step from `(s, t)`.
#[inline]
pub fn rk4_step(eq: &Equations, s: &BlochState, t: f64, dt: f64, pulse: i64) -> BlochState {
    let h = 0.5 * dt;
    let k1 = eq.eval_at(s, t, pulse);
    let k2 = eq.eval_at(&(*s + k1 * h), t + h, pulse);
    let k3 = eq.eval_at(&(*s + k2 * h), t + h, pulse);
    let k4 = eq.eval_at(&(*s + k3 * dt), t + dt, pulse);
    *s + (k1 + (k2 + k3) * 2.0 + k4) * (dt / 6.0)
}

/// Integrates `eq` from `state0` over `grid`.
///
/// For the Fock case each step decays the correlators from the pulse that
/// precedes the step midpoint, so a pulse always falls on a step boundary.
pub fn integrate_grid(eq: &Equations, state0: BlochState, grid: Grid) -> Result<Trajectory, IntegrateError> {
    let dt = grid.dt;
    let ratio = dt * eq.stiffness();
    if ratio > MAX_STEP_STIFFNESS {
        return Err(IntegrateError::StepTooLarge { dt, ratio });
    }
    let stride = grid.stride.max(1);
    let mut samples = Vec::with_capacity(grid.steps / stride + 1);
    samples.push(state0);
    let mut s = state0;
    let mut max_excess = s.bloch_norm_sqr() - 1.0;
    let period = eq.pulse_period();
    for k in 0..grid.steps {
        let t = grid.t0 + dt * k as f64;
        let pulse = period.map_or(0, |p| ((t + 0.5 * dt) / p).floor() as i64);
        s = rk4_step(eq, &s, t, dt, pulse);
        if !s.is_finite() {
            return Err(IntegrateError::NonFinite { step: k + 1, t: t + dt, state: s });
        }
        max_excess = max_excess.max(s.bloch_norm_sqr() - 1.0);
        if (k + 1) % stride == 0 {
            samples.push(s);
        }
    }
    Ok(Trajectory { t0: grid.t0, dt: dt * stride as f64, samples, frame: eq.frame, max_purity_excess: max_excess })
}

/// Integrates over `t_span` with step `dt`, recording every step.
pub fn integrate(
    eq: &Equations,
    state0: BlochState,
    t_span: (f64, f64),
    dt: f64,
) -> Result<Trajectory, IntegrateError> {
    integrate_grid(eq, state0, Grid::covering(t_span, dt, eq.pulse_period())?)
}
