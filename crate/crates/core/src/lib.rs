// Copyright 2026 The qmix Authors
// SPDX-License-Identifier: Apache-2.0

//! Wave mixing on a single driven qubit.
//!
//! A two-level system is driven by a classical tone at `ω₁ = ω_d + δω` and a
//! second field near `ω₂ = ω_d − δω`: another classical tone, broadband
//! squeezed vacuum, or a pulsed 0/1-photon source. The crate integrates the
//! rotating-frame Bloch equations, extracts the elastic emission lines at
//! `ω_d + nδω`, and checks them against closed-form steady states.
//!
//! ```no_run
//! use qmix::prelude::*;
//!
//! let q = QubitParams::radiative();
//! let frame = FrameConfig::new(0.002, 0.0).unwrap();
//! let s = Scenario::TwoTone(TwoTone { omega1: 0.15, omega2: 0.15 });
//! let out = qmix::run::simulate(&q, &frame, &s, &RunSettings::default()).unwrap();
//! for (n, amp) in &out.spectrum.entries {
//!     println!("{n:+} {:.3e}", amp.norm());
//! }
//! ```

// `!(x > 0.0)` is how NaN gets rejected along with the ordinary failures.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod config;
pub mod dynamics;
pub mod model;
pub mod multiphoton;
pub mod run;
pub mod spectra;

pub mod prelude {
    pub use crate::config::{Config, RunSettings};
    pub use crate::model::{
        BlochState, EnvelopeMode, FockSource, FrameConfig, QubitParams, Scenario, ScenarioKind, SqueezedBath,
        Trajectory, TwoTone,
    };
    pub use crate::spectra::{PeakReport, SpectrumTable};
    pub use num_complex::Complex64;
}
