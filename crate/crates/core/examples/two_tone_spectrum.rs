// Copyright 2026 The qmix Authors
// SPDX-License-Identifier: Apache-2.0

//! Side peaks of a qubit driven by two tones.
//!
//! ```bash
//! cargo run --release --example two_tone_spectrum
//! ```

use qmix::analytic::TwoToneMixing;
use qmix::prelude::*;
use qmix::run::{fig1_two_tone, oracle_table, simulate};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (q, f, s) = fig1_two_tone();
    let out = simulate(&q, &f, &s, &RunSettings::default())?;
    let oracle = oracle_table(&q, &f, &s, 8)?;

    println!("{:>3} {:>12} {:>12} {:>9} {:>9}", "n", "|S_n|", "closed form", "phase", "closed");
    for n in -8..=8 {
        let (num, ora) = (out.spectrum.get(n).unwrap(), oracle.get(n).unwrap());
        println!("{n:>3} {:>12.4e} {:>12.4e} {:>9.4} {:>9.4}", num.norm(), ora.norm(), num.arg(), ora.arg());
    }

    let Scenario::TwoTone(tt) = s else { unreachable!() };
    let mix = TwoToneMixing::new(&tt, &q, &f)?;
    println!("\nneighbouring peaks shrink by tan(ϑ/2) = {:.6}", mix.ratio().abs());
    for n in [1, 3, 5] {
        println!("  |S_{}/S_{n}| = {:.6}", n + 2, out.spectrum.abs(n + 2) / out.spectrum.abs(n));
    }
    println!("purity excess along the run: {:.1e}", out.trajectory.max_purity_excess);
    Ok(())
}
