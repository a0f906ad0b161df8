// Copyright 2026 The qmix Authors
// SPDX-License-Identifier: Apache-2.0

use crate::model::Trajectory;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum SteadyError {
    #[error("period {0} is not a whole number of samples")]
    Misaligned(f64),
    #[error("no steady state within window (last mismatch {mismatch:e} at t = {t})")]
    NotReached { t: f64, mismatch: f64 },
}

/// Earliest sample index after which `traj` repeats itself with `period` to
/// within `tol` in sup-norm.
///
/// At least one full period after the returned index is compared.
pub fn steady_state_detect(traj: &Trajectory, period: f64, tol: f64) -> Result<usize, SteadyError> {
    let per = traj.samples_per(period).ok_or(SteadyError::Misaligned(period))?;
    let s = &traj.samples;
    if s.len() <= per {
        return Err(SteadyError::NotReached { t: traj.t_end(), mismatch: f64::INFINITY });
    }
    let last_bad = (0..s.len() - per).rev().find(|&i| s[i].sup_dist(&s[i + per]) > tol);
    let start = last_bad.map_or(0, |i| i + 1);
    if start + per >= s.len() {
        let i = last_bad.unwrap_or(0);
        return Err(SteadyError::NotReached { t: traj.time(i), mismatch: s[i].sup_dist(&s[i + per]) });
    }
    Ok(start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{integrate, Equations};
    use crate::model::{BlochState, FrameConfig, QubitParams, Scenario, TwoTone};

    #[test]
    fn undriven_ground_is_immediately_steady() {
        let f = FrameConfig::new(0.1, 0.0).unwrap();
        let eq = Equations::for_scenario(
            &Scenario::TwoTone(TwoTone { omega1: 0.0, omega2: 0.0 }),
            &QubitParams::radiative(),
            &f,
        );
        let tr = integrate(&eq, BlochState::GROUND, (0.0, 200.0), 0.01 * std::f64::consts::PI).unwrap();
        assert_eq!(steady_state_detect(&tr, f.beat_period(), 1e-12).unwrap(), 0);
    }

    #[test]
    fn two_tone_transient_is_short() {
        let f = FrameConfig::new(0.02, 0.0).unwrap();
        let eq = Equations::for_scenario(
            &Scenario::TwoTone(TwoTone { omega1: 0.15, omega2: 0.15 }),
            &QubitParams::radiative(),
            &f,
        );
        let dt = f.beat_period() / 4000.0;
        let tr = integrate(&eq, BlochState::GROUND, (0.0, 3.0 * f.beat_period()), dt).unwrap();
        let i = steady_state_detect(&tr, f.beat_period(), 1e-4).unwrap();
        assert!(tr.time(i) <= 10.0 / 0.5, "t = {}", tr.time(i));
        assert!(steady_state_detect(&tr, f.beat_period() * (1.0 + 1.0 / 8000.0), 1e-4).is_err());
        assert!(steady_state_detect(&tr, f.beat_period() / 2.0, 1e-4).is_err());
        let short = integrate(&eq, BlochState::GROUND, (0.0, 1.1 * f.beat_period()), dt).unwrap();
        assert!(matches!(steady_state_detect(&short, f.beat_period(), 1e-12), Err(SteadyError::NotReached { .. })));
    }
}
