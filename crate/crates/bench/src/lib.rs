//! Shared inputs for the criterion benchmarks.

use jrsp_core::{kraus_set, KrausChannel, NoiseKind, PhaseSpec};

/// Phases used by the sweep presets, in degrees.
pub const PRESET_DEGREES: [f64; 3] = [30.0, 180.0, 300.0];

pub fn preset_phases(degrees: f64) -> PhaseSpec {
    PhaseSpec::uniform_degrees(degrees).expect("finite preset angle")
}

pub fn channel(kind: NoiseKind, lambda: f64) -> KrausChannel {
    kraus_set(kind, lambda).expect("lambda in [0, 1]")
}
