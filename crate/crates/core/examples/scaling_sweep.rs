// Copyright 2026 The qmix Authors
// SPDX-License-Identifier: Apache-2.0

//! Power laws of the mixing peaks from a drive-strength sweep.
//!
//! ```bash
//! QMIX_THREADS=4 cargo run --release --example scaling_sweep
//! ```

use qmix::config::Config;
use qmix::prelude::*;
use qmix::run::{parse_values, sweep, Axis};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = QubitParams::radiative();
    let f = FrameConfig::new(0.002, 0.0)?;
    let fock = Config::new(&q, &f, &Scenario::Fock(FockSource::new(0.05, 0.5, 0.5, 10.0)), RunSettings::default());

    let res = sweep(&fock, Axis::Omega1, &parse_values("logspace:0.01:0.1:6")?)?;
    for fit in &res.fits {
        println!(
            "n = {:+}: slope {:.3}, weak-drive prediction {:?}",
            fit.n,
            fit.slope.unwrap_or(f64::NAN),
            fit.predicted
        );
    }

    let res = sweep(&fock, Axis::Nu, &parse_values("linspace:0.1:0.9:9")?)?;
    for (nu, s3) in res.series(3) {
        println!("ν = {nu:.1}: |S_3| = {s3:.4e}");
    }
    println!("largest at ν = {}", res.fit(3).map_or(f64::NAN, |f| f.argmax));
    Ok(())
}
