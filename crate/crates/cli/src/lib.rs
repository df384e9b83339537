//! Command-line front end for the `jrsp-core` simulator: fidelity sweeps,
//! noiseless outcome tables, basis dumps and the closed-form verification
//! report.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod format;

use jrsp_core::AssistMode;

use crate::args::{Cli, Command};
use crate::commands::verify::NamedPhases;
use crate::config::{grid_or_default, parse_phases, validate_grid, SweepConfig};
pub use crate::error::CliError;

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

/// Runs one parsed command and returns its exit code.
pub fn run(cli: &Cli) -> Result<i32, CliError> {
    match &cli.command {
        Command::Sweep(a) => commands::sweep::cmd_sweep(&SweepConfig::from_args(a)?),
        Command::Outcomes(a) => {
            let mode: AssistMode = a.mode.parse().map_err(CliError::Usage)?;
            let phases = parse_phases(&a.phases)?;
            commands::outcomes::cmd_outcomes(&phases, mode, a.format, a.output.as_deref())
        }
        Command::Verify(a) => {
            let grid = grid_or_default(&a.grid);
            validate_grid(grid.0, grid.1, grid.2)?;
            let sets = if a.phases.alpha.is_some() || a.phases.beta.is_some() {
                vec![NamedPhases { label: "custom".into(), phases: parse_phases(&a.phases)? }]
            } else {
                commands::verify::default_phase_sets()
            };
            commands::verify::cmd_verify(&sets, grid, a.format, a.output.as_deref())
        }
        Command::Bases(a) => {
            commands::bases::cmd_bases(&parse_phases(&a.phases)?, a.output.as_deref())
        }
    }
}
