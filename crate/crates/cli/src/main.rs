//! `ptfano`: sweeps, resonance frequencies, closed-form verification and
//! conservation audits from the command line.
//!
//! Exit status is 0 on success, 1 when `verify` or `conservation` exceeds its
//! tolerance, and 2 for bad or inconsistent flags and unwritable output.

mod cli;
mod commands;
mod config;
mod error;
mod output;

use std::process::ExitCode;

use clap::Parser;

use crate::cli::{Cli, Command};
use crate::commands::Verdict;
use crate::config::{resolve_axis, resolve_grid, resolve_model, resolve_output, ConfigFile};
use crate::error::{CliError, Result};

fn run(cli: Cli) -> Result<Verdict> {
    match cli.command {
        Command::Sweep {
            model,
            grid,
            axis,
            oracle,
            output,
        } => {
            let cfg = ConfigFile::load(model.config.as_deref())?;
            let resolved = resolve_model(&model, &cfg)?;
            let vary = resolve_axis(&axis, &cfg, &resolved)?;
            let oracle = oracle.oracle || cfg.oracle.unwrap_or(false);
            commands::sweep(
                &resolved,
                resolve_grid(&grid, &cfg),
                vary,
                oracle,
                &resolve_output(&output, &cfg),
            )
        }
        Command::Resonances { model, output } => {
            let cfg = ConfigFile::load(model.config.as_deref())?;
            let resolved = resolve_model(&model, &cfg)?;
            commands::resonance_roots(&resolved, &resolve_output(&output, &cfg))
        }
        Command::Verify {
            model,
            grid,
            tol,
            output,
        } => {
            let cfg = ConfigFile::load(model.config.as_deref())?;
            let resolved = resolve_model(&model, &cfg)?;
            commands::verify(
                &resolved,
                resolve_grid(&grid, &cfg),
                tol.tol.or(cfg.tol),
                &resolve_output(&output, &cfg),
            )
        }
        Command::Conservation {
            model,
            grid,
            oracle,
            tol,
            output,
        } => {
            let cfg = ConfigFile::load(model.config.as_deref())?;
            let resolved = resolve_model(&model, &cfg)?;
            let oracle = oracle.oracle || cfg.oracle.unwrap_or(false);
            let grid = resolve_grid(&grid, &cfg);
            commands::conservation(
                &resolved,
                grid,
                oracle,
                tol.tol.or(cfg.tol),
                &resolve_output(&output, &cfg),
            )
        }
        Command::Amplitudes {
            model,
            omega,
            oracle,
            output,
        } => {
            let cfg = ConfigFile::load(model.config.as_deref())?;
            let resolved = resolve_model(&model, &cfg)?;
            let oracle = oracle.oracle || cfg.oracle.unwrap_or(false);
            let omega = omega
                .or_else(|| cfg.omega.clone())
                .ok_or_else(|| CliError::Usage("amplitudes needs --omega".into()))?;
            commands::amplitudes(&resolved, &omega, oracle, &resolve_output(&output, &cfg))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
