use std::fmt::Write;

use jrsp_core::{
    closed_form_fidelity, kraus_set, lambda_grid, simulated_fidelity, FidelityConvention, NoiseKind,
};
use serde::Serialize;

use crate::args::OutputFormat;
use crate::config::SweepConfig;
use crate::error::CliError;
use crate::format::fmt_num;

pub const CSV_HEADER: &str = "lambda,channel,fidelity_sim,fidelity_closed,abs_diff";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub lambda: f64,
    pub channel: NoiseKind,
    pub fidelity_sim: f64,
    pub fidelity_closed: f64,
    pub abs_diff: f64,
}

/// Channel-major rows over the configured grid.
pub fn sweep_rows(cfg: &SweepConfig) -> Result<Vec<SweepRow>, CliError> {
    let convention = if cfg.renormalized {
        FidelityConvention::Renormalized
    } else {
        FidelityConvention::IdealWeight
    };
    let grid = lambda_grid(cfg.lambda_start, cfg.lambda_end, cfg.steps);
    let mut rows = Vec::with_capacity(grid.len() * cfg.channels.len());
    for &kind in &cfg.channels {
        for &lambda in &grid {
            let ch = kraus_set(kind, lambda)?;
            let fidelity_sim = simulated_fidelity(&cfg.phases, Some(&ch), convention)?;
            let fidelity_closed = closed_form_fidelity(kind.into(), lambda, &cfg.phases)?;
            rows.push(SweepRow {
                lambda,
                channel: kind,
                fidelity_sim,
                fidelity_closed,
                abs_diff: (fidelity_sim - fidelity_closed).abs(),
            });
        }
    }
    Ok(rows)
}

pub fn render(rows: &[SweepRow], format: OutputFormat) -> Result<String, CliError> {
    match format {
        OutputFormat::Json => super::to_json(&rows),
        OutputFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    fmt_num(r.lambda),
                    r.channel,
                    fmt_num(r.fidelity_sim),
                    fmt_num(r.fidelity_closed),
                    fmt_num(r.abs_diff)
                )
                .expect("string write");
            }
            Ok(out)
        }
    }
}

pub fn cmd_sweep(cfg: &SweepConfig) -> Result<i32, CliError> {
    cfg.validate()?;
    let rows = sweep_rows(cfg)?;
    super::write_out(&render(&rows, cfg.output_format)?, cfg.output_path.as_deref())?;
    Ok(0)
}
