use std::fmt::Write;
use std::path::Path;

use jrsp_core::{alice_basis, bob_basis, MeasurementBasis, PhaseSpec};

use crate::error::CliError;
use crate::format::{fmt_complex, fmt_num};

fn dump(out: &mut String, name: &str, basis: &MeasurementBasis) {
    writeln!(out, "{name}:").expect("string write");
    for v in basis.vectors() {
        let cells: Vec<String> = v.as_slice().iter().map(|&z| fmt_complex(z)).collect();
        writeln!(out, "  [{}]", cells.join(", ")).expect("string write");
    }
}

/// One row per basis vector, entries in computational order.
pub fn render(phases: &PhaseSpec) -> String {
    let alice = alice_basis(phases);
    let bob = bob_basis(phases);
    let angles = |a: [f64; 4]| a.map(fmt_num).join(",");
    let mut out = String::new();
    writeln!(out, "alpha (radians): {}", angles(phases.alpha())).expect("string write");
    writeln!(out, "beta (radians): {}", angles(phases.beta())).expect("string write");
    dump(&mut out, "alice", &alice);
    dump(&mut out, "bob", &bob);
    writeln!(
        out,
        "gram_defect: alice={} bob={}",
        fmt_num(alice.gram_defect()),
        fmt_num(bob.gram_defect())
    )
    .expect("string write");
    out
}

pub fn cmd_bases(phases: &PhaseSpec, output: Option<&Path>) -> Result<i32, CliError> {
    super::write_out(&render(phases), output)?;
    Ok(0)
}
