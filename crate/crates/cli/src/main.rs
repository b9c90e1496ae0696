//! `m2causal`: evaluate plane maps, run residual and causality checks,
//! compute proper times and search for counterexamples from a scenario file.
//!
//! Exit codes: 0 pass, 1 property violation, 2 invalid input, 3 runtime failure.

mod commands;
mod report;
mod scenario;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "m2causal", version, about = "Causal structure checks in 1+1 Minkowski space")]
struct Cli {
    /// Scenario file (TOML).
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Overrides the scenario seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Random pairs for chronology searches.
    #[arg(long, global = true, default_value_t = 100_000)]
    pairs: usize,
    /// Grid override `key=value` (t_min, t_max, x_min, x_max, n_t, n_x, h); repeatable.
    #[arg(long = "grid", global = true, value_name = "KEY=VALUE")]
    grid: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the map over the grid as CSV.
    Eval { map: String },
    /// Residual check at h and h/2.
    Check { map: String, check: CheckKind },
    /// Chronology preservation; the full automorphism suite for MW maps.
    Causal { map: String },
    /// Proper-time computations.
    Propertime {
        #[command(subcommand)]
        which: ProperTime,
    },
    /// Certify that Ω₁ + Ω₂∘conj solves the wave equation but is not causal.
    Counterexample { observer1: String, observer2: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Holo,
    Antiholo,
    Wave,
    Conformal,
    Loggwave,
}

#[derive(Subcommand, Debug)]
pub enum ProperTime {
    /// Flat proper time of `x(t) = x0 + v t`.
    Inertial {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        velocity: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t0: f64,
        #[arg(long, allow_negative_numbers = true)]
        t1: f64,
    },
    /// Proper time of `x(t) = x0 + v t` in the radar chart of an observer.
    Accelerated {
        #[arg(long)]
        observer: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        x0: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        velocity: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        t0: f64,
        #[arg(long, allow_negative_numbers = true)]
        t1: f64,
    },
    /// Both twins compute both proper times.
    Twin {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, allow_negative_numbers = true)]
        s0: f64,
        #[arg(long, allow_negative_numbers = true)]
        s1: f64,
        #[arg(long, default_value_t = 4001)]
        samples: usize,
        /// Relative agreement required between the two computations of each τ.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Static clocks at two radar positions of a uniformly accelerated observer.
    Dilation {
        #[arg(long, allow_negative_numbers = true)]
        accel: f64,
        #[arg(long, allow_negative_numbers = true)]
        x1: f64,
        #[arg(long, allow_negative_numbers = true)]
        x2: f64,
        #[arg(long)]
        dt: f64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code() as u8)
        }
    }
}
