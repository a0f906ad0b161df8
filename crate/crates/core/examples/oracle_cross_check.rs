// Copyright 2026 The qmix Authors
// SPDX-License-Identifier: Apache-2.0

//! Bloch equations against an independent 2×2 density-matrix integration.
//!
//! ```bash
//! cargo run --release --example oracle_cross_check
//! ```

use qmix::dynamics::{density_matrix_oracle, integrate_grid, DensityMatrix2, Equations, Grid};
use qmix::prelude::Complex64 as C64;
use qmix::prelude::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = FrameConfig::new(0.002, 0.0)?;
    let cases = [
        (
            "two-tone",
            QubitParams::radiative(),
            Scenario::TwoTone(TwoTone { omega1: 0.15, omega2: 0.15 }),
            BlochState::GROUND,
        ),
        ("squeezed", QubitParams::radiative(), Scenario::Squeezed(SqueezedBath::pure(0.15, 2.0)), BlochState::GROUND),
        (
            "fock",
            QubitParams::new(1.0, 1.0)?,
            Scenario::Fock(FockSource::new(0.15, 0.1, 0.05, 10.0)),
            BlochState::new(C64::new(0.0, 0.0), 0.0),
        ),
    ];
    for (name, q, s, start) in cases {
        let eq = Equations::for_scenario(&s, &q, &f);
        let grid = Grid::covering((0.0, 100.0), 0.01, eq.pulse_period())?;
        let bloch = integrate_grid(&eq, start, grid)?;
        let rho = density_matrix_oracle(&eq, DensityMatrix2::from_bloch(&start), grid)?;
        let dev = bloch.samples.iter().zip(&rho.samples).map(|(a, b)| a.sup_dist(b)).fold(0.0, f64::max);
        println!("{name:>9}: sup deviation {dev:.2e} over {} steps", grid.steps);
    }
    Ok(())
}
