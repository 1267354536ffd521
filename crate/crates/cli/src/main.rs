//! `sdos` — drive the Stokes-Darcy optimized Schwarz experiments.
//!
//! Subcommands: `optimize` (Robin coefficients from the min-max analysis),
//! `run` (time-dependent experiments with per-step iteration CSV),
//! `sweep-s` (iteration counts across a grid of zero locations `s`), and
//! `dump-mesh` (plain-text mesh dump).
//!
//! Exit codes: 0 success, 2 optimizer failure, 3 solver non-convergence,
//! 64 usage error.

mod commands;
mod config;
mod csvio;

use clap::Parser;

#[derive(Parser, Debug)]
#[command(
    name = "sdos",
    version,
    about = "Optimized Schwarz Stokes-Darcy solver"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: commands::Command,
}

fn main() {
    let argv = match config::expand_config_args(std::env::args().collect()) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("sdos: {e}");
            std::process::exit(64);
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version as "errors" with exit 0.
            if e.use_stderr() {
                eprintln!("{e}");
                std::process::exit(64);
            }
            print!("{e}");
            std::process::exit(0);
        }
    };
    let code = match commands::dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("sdos: {e}");
            commands::EXIT_OPTIMIZER
        }
    };
    std::process::exit(code);
}
