//! Single-qubit Kraus sets for the six decoherence models.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{JrspError, Result};
use crate::tensor::ComplexMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseKind {
    BitFlip,
    PhaseFlip,
    BitPhaseFlip,
    AmplitudeDamping,
    PhaseDamping,
    Depolarizing,
}

impl NoiseKind {
    pub const ALL: [NoiseKind; 6] = [
        NoiseKind::BitFlip,
        NoiseKind::PhaseFlip,
        NoiseKind::BitPhaseFlip,
        NoiseKind::AmplitudeDamping,
        NoiseKind::PhaseDamping,
        NoiseKind::Depolarizing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NoiseKind::BitFlip => "bit-flip",
            NoiseKind::PhaseFlip => "phase-flip",
            NoiseKind::BitPhaseFlip => "bit-phase-flip",
            NoiseKind::AmplitudeDamping => "amplitude-damping",
            NoiseKind::PhaseDamping => "phase-damping",
            NoiseKind::Depolarizing => "depolarizing",
        }
    }

    /// Number of Kraus operators in the set.
    pub fn op_count(self) -> usize {
        match self {
            NoiseKind::PhaseDamping => 3,
            NoiseKind::Depolarizing => 4,
            _ => 2,
        }
    }
}

impl fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NoiseKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        let kind = match norm.as_str() {
            "bit-flip" | "bf" => NoiseKind::BitFlip,
            "phase-flip" | "pf" => NoiseKind::PhaseFlip,
            "bit-phase-flip" | "bpf" => NoiseKind::BitPhaseFlip,
            "amplitude-damping" | "ad" => NoiseKind::AmplitudeDamping,
            "phase-damping" | "pd" => NoiseKind::PhaseDamping,
            "depolarizing" | "dp" => NoiseKind::Depolarizing,
            _ => return Err(format!("unknown channel '{s}'")),
        };
        Ok(kind)
    }
}

/// Which phase-damping `E0` to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PhaseDampingVariant {
    /// `E0 = sqrt(1-l) I`; trace preserving.
    #[default]
    Standard,
    /// `E0 = sqrt(1-l) |0><0|`; sums to `diag(1, l)`, kept for comparison only.
    AsPrinted,
}

/// A validated single-qubit Kraus set at a fixed decoherence rate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KrausChannel {
    kind: NoiseKind,
    lambda: f64,
    variant: PhaseDampingVariant,
    ops: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn kind(&self) -> NoiseKind {
        self.kind
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn variant(&self) -> PhaseDampingVariant {
        self.variant
    }

    pub fn ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    /// Max-entry modulus of `sum_k E_k^dag E_k - I`.
    pub fn completeness_defect(&self) -> f64 {
        completeness_defect(self)
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Builds the standard Kraus set for `kind` at rate `lambda`.
pub fn kraus_set(kind: NoiseKind, lambda: f64) -> Result<KrausChannel> {
    kraus_set_with(kind, lambda, PhaseDampingVariant::Standard)
}

/// Like [`kraus_set`] but selects the phase-damping `E0`; ignored for other kinds.
pub fn kraus_set_with(
    kind: NoiseKind,
    lambda: f64,
    variant: PhaseDampingVariant,
) -> Result<KrausChannel> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(JrspError::LambdaOutOfRange(lambda));
    }
    let keep = (1.0 - lambda).sqrt();
    let flip = lambda.sqrt();
    let id = ComplexMatrix::identity(2);
    let ops = match kind {
        NoiseKind::BitFlip => vec![id.scale_real(keep), ComplexMatrix::pauli_x().scale_real(flip)],
        NoiseKind::PhaseFlip => {
            vec![id.scale_real(keep), ComplexMatrix::pauli_z().scale_real(flip)]
        }
        NoiseKind::BitPhaseFlip => {
            vec![id.scale_real(keep), ComplexMatrix::pauli_y().scale_real(flip)]
        }
        NoiseKind::AmplitudeDamping => vec![
            ComplexMatrix::diagonal(&[real(1.0), real(keep)]),
            ComplexMatrix::from_real_rows(&[[0.0, flip], [0.0, 0.0]]),
        ],
        NoiseKind::PhaseDamping => {
            let e0 = match variant {
                PhaseDampingVariant::Standard => id.scale_real(keep),
                PhaseDampingVariant::AsPrinted => ComplexMatrix::diagonal(&[real(keep), real(0.0)]),
            };
            vec![
                e0,
                ComplexMatrix::diagonal(&[real(flip), real(0.0)]),
                ComplexMatrix::diagonal(&[real(0.0), real(flip)]),
            ]
        }
        NoiseKind::Depolarizing => {
            let third = (lambda / 3.0).sqrt();
            vec![
                id.scale_real(keep),
                ComplexMatrix::pauli_x().scale_real(third),
                ComplexMatrix::pauli_y().scale_real(third),
                ComplexMatrix::pauli_z().scale_real(third),
            ]
        }
    };
    let variant =
        if kind == NoiseKind::PhaseDamping { variant } else { PhaseDampingVariant::Standard };
    Ok(KrausChannel { kind, lambda, variant, ops })
}

/// Max-entry modulus of `sum_k E_k^dag E_k - I`.
pub fn completeness_defect(ch: &KrausChannel) -> f64 {
    let mut sum = ComplexMatrix::zeros(2, 2);
    for e in &ch.ops {
        sum = sum.add(&e.adjoint().matmul(e).expect("2x2")).expect("2x2");
    }
    sum.max_abs_diff(&ComplexMatrix::identity(2)).expect("2x2")
}
