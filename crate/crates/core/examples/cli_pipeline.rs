// Copyright 2026 The qmix Authors
// SPDX-License-Identifier: Apache-2.0

//! What `qmix simulate` and `qmix validate --spectrum` do, from library code.
//!
//! ```bash
//! cargo run --release --example cli_pipeline
//! ```

use qmix::config::Config;
use qmix::run::{cmd_simulate, cmd_validate, RunError, ValidateOptions};
use qmix::spectra::Compare;

const CONFIG: &str = r#"
[qubit]
gamma_rad = 2.0          # any unit; everything is rescaled to gamma_rad = 1

[frame]
delta_w = 0.004

[scenario]
kind = "two_tone"
omega1 = 0.3
omega2 = 0.3
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = Config::from_toml_str(CONFIG)?;
    let out = std::env::temp_dir().join(format!("qmix-{}", &config.hash()[..12]));
    let files = cmd_simulate(&config, None, &out)?;
    println!("wrote {}", files.manifest.outputs.join(", "));

    let opts = ValidateOptions { spectrum: Some(out.join("spectrum.csv")), ..Default::default() };
    match cmd_validate(&config, &opts) {
        Ok(_) => println!("complex comparison passed"),
        Err(RunError::Comparison(rep)) => {
            let bad: Vec<i32> = rep.failures().map(|e| e.n).collect();
            println!("complex comparison fails at {bad:?} (phase lag of the quasi-static closed form)");
        }
        Err(e) => return Err(e.into()),
    }
    let opts = ValidateOptions { compare: Some(Compare::Magnitude), ..opts };
    let rep = cmd_validate(&config, &opts)?;
    println!("magnitudes agree; largest deviation {:.2e}", rep.max_delta());
    Ok(())
}
