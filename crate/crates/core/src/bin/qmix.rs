// Copyright 2026 The qmix Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qmix::config::Config;
use qmix::run::{self, Axis, RunError, ValidateOptions};
use qmix::spectra::{Compare, PeakReport};

#[derive(Parser)]
#[command(name = "qmix", version, about = "Wave mixing on a driven qubit")]
struct Cli {
    /// Suppress progress and tables on stdout.
    #[arg(long, global = true)]
    quiet: bool,
    /// Print errors as JSON on stderr.
    #[arg(long, global = true)]
    json_errors: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Integrate, extract harmonics and write CSV/JSON outputs.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare the numeric spectrum with the closed-form solution.
    Validate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        rel_tol: Option<f64>,
        #[arg(long)]
        abs_floor: Option<f64>,
        /// complex or magnitude.
        #[arg(long)]
        compare: Option<Compare>,
        /// Check this spectrum CSV instead of simulating.
        #[arg(long)]
        spectrum: Option<PathBuf>,
        /// Write the comparison report here as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Repeat the simulation over a range of one parameter.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// omega1, nu, n_bath, m_bath, delta_w or period.
        #[arg(long)]
        axis: Axis,
        /// `a,b,c`, `linspace:a:b:n` or `logspace:a:b:n`.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn print_report(rep: &PeakReport) {
    let oracle = rep.entries.iter().any(|e| e.oracle_abs.is_some());
    if oracle {
        println!("{:>4} {:>14} {:>9} {:>14} {:>10} {:>6}", "n", "|S_n|", "phase", "oracle", "deviation", "pass");
    } else {
        println!("{:>4} {:>14} {:>9} {:>6}", "n", "|S_n|", "phase", "pass");
    }
    for e in &rep.entries {
        match (e.oracle_abs, e.delta) {
            (Some(o), Some(d)) => {
                let dev = if o > 0.0 { format!("{:.2}%", 100.0 * d / o) } else { format!("{d:.1e}") };
                println!("{:>4} {:>14.6e} {:>9.4} {:>14.6e} {:>10} {:>6}", e.n, e.abs, e.phase, o, dev, e.pass);
            }
            _ => println!("{:>4} {:>14.6e} {:>9.4} {:>6}", e.n, e.abs, e.phase, e.pass),
        }
    }
}

fn run(cli: &Cli) -> Result<(), RunError> {
    match &cli.cmd {
        Cmd::Simulate { config, out } => {
            let c = Config::load(config)?;
            let files = run::cmd_simulate(&c, Some(config), out)?;
            if !cli.quiet {
                print_report(&files.output.selection);
                println!("wrote {}", files.manifest.outputs.join(", "));
            }
        }
        Cmd::Validate { config, rel_tol, abs_floor, compare, spectrum, report } => {
            let c = Config::load(config)?;
            let opts = ValidateOptions {
                rel_tol: *rel_tol,
                abs_floor: *abs_floor,
                compare: *compare,
                spectrum: spectrum.clone(),
            };
            let result = run::cmd_validate(&c, &opts);
            let rep = match &result {
                Ok(rep) => Some(rep),
                Err(RunError::Comparison(rep)) => Some(rep.as_ref()),
                Err(_) => None,
            };
            if let Some(rep) = rep {
                if let Some(path) = report {
                    std::fs::write(path, serde_json::to_string_pretty(rep)? + "\n")?;
                }
                if !cli.quiet {
                    print_report(rep);
                }
            }
            result?;
        }
        Cmd::Sweep { config, axis, values, out } => {
            let c = Config::load(config)?;
            let values = run::parse_values(values).map_err(RunError::Plan)?;
            let result = run::cmd_sweep(&c, *axis, &values, out);
            if !cli.quiet {
                if let Ok(res) = &result {
                    for f in &res.fits {
                        println!("n={:+} slope={:?} predicted={:?} argmax={}", f.n, f.slope, f.predicted, f.argmax);
                    }
                }
            }
            result?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if cli.json_errors {
                eprintln!("{}", e.to_json());
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
