// Copyright 2026 The qmix Authors
// SPDX-License-Identifier: Apache-2.0

//! Equations of motion, the integrator and the density-matrix cross-check.

mod envelope;
mod integrate;
mod oracle;
mod rhs;
mod steady;

pub use envelope::{correlator_envelopes, CorrelatorDrive};
pub use integrate::{integrate, integrate_grid, rk4_step, Grid, IntegrateError, MAX_STEP_STIFFNESS};
pub use oracle::{density_matrix_oracle, DensityMatrix2, OracleError};
pub use rhs::{rhs_fock, rhs_fock_at, rhs_squeezed, rhs_two_tone, Equations, KindMismatch, RhsKind};
pub use steady::{steady_state_detect, SteadyError};
