//! Closed-form fidelities for the six channels, for cross-checking the
//! density-matrix simulation.
//!
//! Squared brackets of phase exponentials `[sum_k s_k e^{i theta_k}]^2` are
//! evaluated as squared moduli, and an isolated `e^{2 theta}` as
//! `|e^{theta}|^2 = 1`. The simulation is the reference; these expressions
//! are only compared against it.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::{kraus_set_with, NoiseKind, PhaseDampingVariant};
use crate::error::{JrspError, Result};
use crate::protocol::{simulated_fidelity, FidelityConvention, PhaseSign, PhaseSpec};

/// Tolerance for closed form vs. simulation agreement.
pub const AGREEMENT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClosedFormKind {
    BitFlip,
    PhaseFlip,
    BitPhaseFlip,
    AmplitudeDamping,
    PhaseDamping,
    Depolarizing,
}

impl ClosedFormKind {
    /// Phase flip and phase damping have phase-free expressions with no
    /// reading ambiguity.
    pub fn is_unambiguous(self) -> bool {
        matches!(self, ClosedFormKind::PhaseFlip | ClosedFormKind::PhaseDamping)
    }

    pub fn noise_kind(self) -> NoiseKind {
        match self {
            ClosedFormKind::BitFlip => NoiseKind::BitFlip,
            ClosedFormKind::PhaseFlip => NoiseKind::PhaseFlip,
            ClosedFormKind::BitPhaseFlip => NoiseKind::BitPhaseFlip,
            ClosedFormKind::AmplitudeDamping => NoiseKind::AmplitudeDamping,
            ClosedFormKind::PhaseDamping => NoiseKind::PhaseDamping,
            ClosedFormKind::Depolarizing => NoiseKind::Depolarizing,
        }
    }
}

impl From<NoiseKind> for ClosedFormKind {
    fn from(kind: NoiseKind) -> Self {
        match kind {
            NoiseKind::BitFlip => ClosedFormKind::BitFlip,
            NoiseKind::PhaseFlip => ClosedFormKind::PhaseFlip,
            NoiseKind::BitPhaseFlip => ClosedFormKind::BitPhaseFlip,
            NoiseKind::AmplitudeDamping => ClosedFormKind::AmplitudeDamping,
            NoiseKind::PhaseDamping => ClosedFormKind::PhaseDamping,
            NoiseKind::Depolarizing => ClosedFormKind::Depolarizing,
        }
    }
}

impl fmt::Display for ClosedFormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.noise_kind().fmt(f)
    }
}

/// Signed unit phases inside one squared bracket.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketTerm {
    entries: Vec<Complex64>,
}

impl BracketTerm {
    /// `(sign, angle)` pairs, each becoming `sign * exp(i angle)`.
    pub fn new(terms: &[(f64, f64)]) -> Self {
        Self { entries: terms.iter().map(|&(s, a)| Complex64::from_polar(s, a)).collect() }
    }

    pub fn single(angle: f64) -> Self {
        Self::new(&[(1.0, angle)])
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn sum(&self) -> Complex64 {
        self.entries.iter().sum()
    }

    /// `|sum|^2`, the adopted reading of a squared bracket.
    pub fn squared_modulus(&self) -> f64 {
        self.sum().norm_sqr()
    }

    /// Largest `| |e| - 1 |` over the entries.
    pub fn modulus_defect(&self) -> f64 {
        self.entries.iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max)
    }
}

/// Bracket over the anti-diagonal pairs `(0,3), (1,2), (2,1), (3,0)`.
fn anti_diagonal(signs: [f64; 4], angle: impl Fn(usize, usize) -> f64) -> BracketTerm {
    let terms: Vec<(f64, f64)> = (0..4).map(|n| (signs[n], angle(n, 3 - n))).collect();
    BracketTerm::new(&terms)
}

/// Brackets used by the bit-flip and bit-phase-flip expressions:
/// `(joint differences, Bob differences, Alice differences)`.
pub fn flip_brackets(phases: &PhaseSpec, signs: [f64; 4]) -> [BracketTerm; 3] {
    [
        anti_diagonal([1.0; 4], |n, m| phases.joint_difference(n, m)),
        anti_diagonal(signs, |n, m| phases.bob_pair(n, m, PhaseSign::Minus)),
        anti_diagonal(signs, |n, m| phases.alice_pair(n, m, PhaseSign::Minus)),
    ]
}

/// How the depolarizing quartic correction is attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DepolarizingGrouping {
    /// `l^2 ((1-l)^2/72 - l^2/648) [B1]`.
    #[default]
    Factored,
    /// `l^2 (1-l)^2/72 [B1] - l^4/648`, the subtraction outside the bracket.
    DetachedQuartic,
}

pub fn closed_form_fidelity(kind: ClosedFormKind, lambda: f64, phases: &PhaseSpec) -> Result<f64> {
    closed_form_fidelity_with(kind, lambda, phases, DepolarizingGrouping::Factored)
}

pub fn closed_form_fidelity_with(
    kind: ClosedFormKind,
    lambda: f64,
    phases: &PhaseSpec,
    grouping: DepolarizingGrouping,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(JrspError::LambdaOutOfRange(lambda));
    }
    let l = lambda;
    let k = 1.0 - lambda;
    let f = match kind {
        ClosedFormKind::BitFlip | ClosedFormKind::BitPhaseFlip => {
            let signs =
                if kind == ClosedFormKind::BitFlip { [1.0; 4] } else { [1.0, -1.0, -1.0, 1.0] };
            let [joint, bob, alice] = flip_brackets(phases, signs);
            k.powi(4)
                + l.powi(4) / 16.0 * joint.squared_modulus()
                + l * l * k * k / 16.0 * (bob.squared_modulus() + alice.squared_modulus())
        }
        ClosedFormKind::PhaseFlip => l.powi(4) + k.powi(4),
        ClosedFormKind::AmplitudeDamping => {
            let lead = (1.0 + 2.0 * k + k * k).powi(2) / 16.0;
            let decay = BracketTerm::single(phases.joint_difference(3, 0)).squared_modulus();
            let alice = BracketTerm::single(phases.alice_pair(3, 0, PhaseSign::Plus));
            let bob = BracketTerm::single(phases.bob_pair(3, 0, PhaseSign::Plus));
            lead + l.powi(4) / 16.0 * decay
                + l * l * k * k / 16.0 * (alice.squared_modulus() + bob.squared_modulus())
        }
        ClosedFormKind::PhaseDamping => k.powi(4) + k * k * l * l / 4.0 + l.powi(4) / 8.0,
        ClosedFormKind::Depolarizing => {
            let pair = |angle: &dyn Fn(usize, usize) -> f64| {
                BracketTerm::new(&[(1.0, angle(1, 2)), (1.0, angle(2, 1))]).squared_modulus()
            };
            let inner = pair(&|n, m| phases.bob_pair(n, m, PhaseSign::Minus))
                + pair(&|n, m| phases.alice_pair(n, m, PhaseSign::Minus));
            let outer = pair(&|n, m| phases.joint_difference(n, m))
                + anti_diagonal([1.0; 4], |n, m| phases.joint_difference(n, m)).squared_modulus();
            let middle = match grouping {
                DepolarizingGrouping::Factored => l * l * (k * k / 72.0 - l * l / 648.0) * inner,
                DepolarizingGrouping::DetachedQuartic => {
                    l * l * k * k / 72.0 * inner - l.powi(4) / 648.0
                }
            };
            k.powi(4) + middle + l.powi(4) / 81.0 + l.powi(4) / 648.0 * outer
        }
    };
    Ok(f)
}

/// `steps` evenly spaced points from `start` to `end` inclusive.
pub fn lambda_grid(start: f64, end: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let h = (end - start) / (steps - 1) as f64;
            (0..steps).map(|i| if i == steps - 1 { end } else { start + h * i as f64 }).collect()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub lambda: f64,
    pub f_sim: f64,
    pub f_closed: f64,
    pub abs_diff: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompareOptions {
    pub phase_damping: PhaseDampingVariant,
    pub grouping: DepolarizingGrouping,
    pub convention: FidelityConvention,
}

/// One row per grid point: simulated vs. closed-form fidelity.
pub fn compare_with_simulation(
    kind: ClosedFormKind,
    lambda_grid: &[f64],
    phases: &PhaseSpec,
) -> Result<Vec<ComparisonRow>> {
    compare_with_options(kind, lambda_grid, phases, &CompareOptions::default())
}

pub fn compare_with_options(
    kind: ClosedFormKind,
    lambda_grid: &[f64],
    phases: &PhaseSpec,
    opts: &CompareOptions,
) -> Result<Vec<ComparisonRow>> {
    lambda_grid
        .iter()
        .map(|&lambda| {
            let ch = kraus_set_with(kind.noise_kind(), lambda, opts.phase_damping)?;
            let f_sim = simulated_fidelity(phases, Some(&ch), opts.convention)?;
            let f_closed = closed_form_fidelity_with(kind, lambda, phases, opts.grouping)?;
            Ok(ComparisonRow { lambda, f_sim, f_closed, abs_diff: (f_sim - f_closed).abs() })
        })
        .collect()
}

/// Largest `abs_diff` in a comparison.
pub fn max_deviation(rows: &[ComparisonRow]) -> f64 {
    rows.iter().map(|r| r.abs_diff).fold(0.0, f64::max)
}
