//! Validated command configurations built from parsed arguments.

use std::path::PathBuf;

use jrsp_core::{NoiseKind, PhaseSpec};

use crate::args::{AngleUnit, GridArgs, OutputFormat, PhaseArgs, SweepArgs};
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub channels: Vec<NoiseKind>,
    pub lambda_start: f64,
    pub lambda_end: f64,
    pub steps: usize,
    pub phases: PhaseSpec,
    pub angle_unit: AngleUnit,
    pub output_format: OutputFormat,
    pub renormalized: bool,
    pub output_path: Option<PathBuf>,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        validate_grid(self.lambda_start, self.lambda_end, self.steps)?;
        if self.channels.is_empty() {
            return Err(CliError::Usage("no channel selected".into()));
        }
        Ok(())
    }

    pub fn from_args(args: &SweepArgs) -> Result<Self, CliError> {
        let preset = args.preset.as_deref().map(Preset::parse).transpose()?;
        let channels = match (&args.channel, preset) {
            (Some(name), _) => parse_channels(name)?,
            (None, Some(p)) => p.channels(),
            (None, None) => NoiseKind::ALL.to_vec(),
        };
        let (phases, angle_unit) = match (preset, &args.phases.alpha, &args.phases.beta) {
            (Some(p), None, None) => (p.phases(), AngleUnit::Degrees),
            _ => (parse_phases(&args.phases)?, args.phases.unit()),
        };
        let (lambda_start, lambda_end, steps) = grid_or_default(&args.grid);
        let cfg = Self {
            channels,
            lambda_start,
            lambda_end,
            steps,
            phases,
            angle_unit,
            output_format: args.format,
            renormalized: args.renormalized,
            output_path: args.output.clone(),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Defaults: `[0, 1]` with 101 points.
pub fn grid_or_default(grid: &GridArgs) -> (f64, f64, usize) {
    (grid.lambda_start.unwrap_or(0.0), grid.lambda_end.unwrap_or(1.0), grid.steps.unwrap_or(101))
}

pub fn validate_grid(start: f64, end: f64, steps: usize) -> Result<(), CliError> {
    if !(0.0 <= start && start <= end && end <= 1.0) {
        return Err(CliError::Usage(format!(
            "need 0 <= lambda-start <= lambda-end <= 1 (got {start}, {end})"
        )));
    }
    if steps < 2 {
        return Err(CliError::Usage(format!("steps must be at least 2 (got {steps})")));
    }
    Ok(())
}

pub fn parse_channels(name: &str) -> Result<Vec<NoiseKind>, CliError> {
    if name.eq_ignore_ascii_case("all") {
        return Ok(NoiseKind::ALL.to_vec());
    }
    name.split(',').map(|s| s.parse::<NoiseKind>().map_err(CliError::Usage)).collect()
}

/// Three values per party, or four with a leading zero. Missing parties are zero.
pub fn parse_phases(args: &PhaseArgs) -> Result<PhaseSpec, CliError> {
    let take = |v: &Option<Vec<f64>>, who: &str| -> Result<[f64; 4], CliError> {
        match v.as_deref() {
            None => Ok([0.0; 4]),
            Some(&[a, b, c]) => Ok([0.0, a, b, c]),
            Some(&[z, a, b, c]) => Ok([z, a, b, c]),
            Some(other) => Err(CliError::Usage(format!(
                "--{who} takes three comma-separated values, got {}",
                other.len()
            ))),
        }
    };
    let scale = match args.unit() {
        AngleUnit::Degrees => f64::to_radians,
        AngleUnit::Radians => std::convert::identity::<f64>,
    };
    let alpha = take(&args.alpha, "alpha")?.map(scale);
    let beta = take(&args.beta, "beta")?.map(scale);
    Ok(PhaseSpec::from_full(alpha, beta)?)
}

/// Presets: uniform phases in degrees over a channel family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Fig1a,
    Fig1b,
    Fig1c,
    Fig3a,
    Fig3b,
}

impl Preset {
    pub fn parse(name: &str) -> Result<Self, CliError> {
        match name.to_ascii_lowercase().as_str() {
            "fig1a" => Ok(Preset::Fig1a),
            "fig1b" => Ok(Preset::Fig1b),
            "fig1c" => Ok(Preset::Fig1c),
            "fig3a" => Ok(Preset::Fig3a),
            "fig3b" => Ok(Preset::Fig3b),
            _ => Err(CliError::Usage(format!("unknown preset '{name}'"))),
        }
    }

    pub fn degrees(self) -> f64 {
        match self {
            Preset::Fig1a | Preset::Fig3a => 30.0,
            Preset::Fig1b => 180.0,
            Preset::Fig1c | Preset::Fig3b => 300.0,
        }
    }

    pub fn phases(self) -> PhaseSpec {
        PhaseSpec::uniform_degrees(self.degrees()).expect("finite")
    }

    pub fn channels(self) -> Vec<NoiseKind> {
        match self {
            Preset::Fig1a | Preset::Fig1b | Preset::Fig1c => {
                vec![NoiseKind::BitFlip, NoiseKind::PhaseFlip, NoiseKind::BitPhaseFlip]
            }
            Preset::Fig3a | Preset::Fig3b => NoiseKind::ALL.to_vec(),
        }
    }
}
