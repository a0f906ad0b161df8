// Copyright 2026 The qmix Authors
// SPDX-License-Identifier: Apache-2.0

//! A coherent tone in a squeezed bath only populates `n ≡ 1 (mod 4)`.
//!
//! ```bash
//! cargo run --release --example squeezed_selection_rule
//! ```

use qmix::analytic::SqueezedWeakDrive;
use qmix::model::ScenarioKind;
use qmix::multiphoton::process_descriptor;
use qmix::prelude::*;
use qmix::run::simulate;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = QubitParams::radiative();
    let f = FrameConfig::new(0.002, 0.0)?;
    let sq = SqueezedBath::pure(0.15, 2.0);
    let out = simulate(&q, &f, &Scenario::Squeezed(sq), &RunSettings::default())?;
    let t = &out.spectrum;

    println!("floor {:.2e}, threshold {:.2e}", t.floor, t.threshold());
    for n in -7..=7 {
        let why = match process_descriptor(ScenarioKind::Squeezed, n) {
            Ok(d) => format!("coherent {:+}, pairs {:+}", d.coh_absorbed, d.pairs_absorbed),
            Err(e) => e.reason.to_string(),
        };
        println!("{n:>3} {:>11.3e} {:>6} {why}", t.abs(n), t.above_floor(n));
    }

    // At weak drive the first two peaks differ by |m| = 2|M|/(2N+1).
    let weak = SqueezedBath::pure(0.05, 2.0);
    let w = SqueezedWeakDrive::new(&weak, &q)?;
    let wt = simulate(&q, &f, &Scenario::Squeezed(weak), &RunSettings::default())?.spectrum;
    println!("\nf = {:.3}: |S_-3/S_1| = {:.5}, |m| = {:.5}", w.f, wt.abs(-3) / wt.abs(1), w.m.norm());
    Ok(())
}
