use std::fmt::Write;
use std::path::Path;

use jrsp_core::{run_jrsp, AssistMode, PhaseSpec};
use serde::Serialize;

use crate::args::OutputFormat;
use crate::error::CliError;
use crate::format::fmt_num;

pub const CSV_HEADER: &str = "alice_index,bob_index,weight,success,fidelity_normalized";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutcomeRow {
    pub alice_index: usize,
    pub bob_index: usize,
    pub weight: f64,
    pub success: bool,
    /// Absent for branches with no recovery under the chosen mode.
    pub fidelity_normalized: Option<f64>,
}

/// The 16 noiseless branches, Alice-major.
pub fn outcome_rows(phases: &PhaseSpec, mode: AssistMode) -> Result<Vec<OutcomeRow>, CliError> {
    Ok(run_jrsp(phases, None, mode)?
        .iter()
        .map(|r| OutcomeRow {
            alice_index: r.alice_index,
            bob_index: r.bob_index,
            weight: r.weight,
            success: r.success,
            fidelity_normalized: if r.success { r.normalized_fidelity() } else { None },
        })
        .collect())
}

pub fn render(rows: &[OutcomeRow], format: OutputFormat) -> Result<String, CliError> {
    match format {
        OutputFormat::Json => super::to_json(&rows),
        OutputFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for r in rows {
                let fid = r.fidelity_normalized.map(fmt_num).unwrap_or_default();
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.alice_index,
                    r.bob_index,
                    fmt_num(r.weight),
                    r.success,
                    fid
                )
                .expect("string write");
            }
            Ok(out)
        }
    }
}

pub fn cmd_outcomes(
    phases: &PhaseSpec,
    mode: AssistMode,
    format: OutputFormat,
    output: Option<&Path>,
) -> Result<i32, CliError> {
    let rows = outcome_rows(phases, mode)?;
    super::write_out(&render(&rows, format)?, output)?;
    Ok(0)
}
