//! Joint preparation of a two-qubit equatorial state over two GHZ triples.
//!
//! Alice holds qubits (1,4), Bob holds (2,5) and the receiver holds (3,6).
//! Alice knows the phases `alpha`, Bob knows `beta`; the target state is
//! `1/2 sum_n exp(i(alpha_n + beta_n)) |n>`. Each sender measures in a
//! phase-dependent two-qubit basis and the receiver applies a diagonal
//! correction selected by the announced outcomes.
//!
//! Outcome indices are 1-based (`1..=4`) everywhere in this module.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::KrausChannel;
use crate::error::{JrspError, Result};
use crate::tensor::{
    apply_correlated_kraus, apply_unitary, project_two_qubit, pure_overlap, ComplexMatrix,
    QuantumState, QubitAddress,
};

/// Qubits (1,4) in the `(1,4,2,5,3,6)` layout.
pub const ALICE_PAIR: (QubitAddress, QubitAddress) = (QubitAddress(0), QubitAddress(1));
/// Qubits (2,5).
pub const BOB_PAIR: (QubitAddress, QubitAddress) = (QubitAddress(2), QubitAddress(3));
/// Qubits (3,6).
pub const RECEIVER_PAIR: (QubitAddress, QubitAddress) = (QubitAddress(4), QubitAddress(5));

/// Sum of the weights of the four direct-recovery branches in the noiseless
/// protocol; fidelity sums are divided by it.
pub const IDEAL_DIRECT_WEIGHT: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseSign {
    Plus,
    Minus,
}

impl PhaseSign {
    fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            PhaseSign::Plus => a + b,
            PhaseSign::Minus => a - b,
        }
    }
}

/// The six free phases. `alpha[0]` and `beta[0]` are pinned to zero.
///
/// The combination accessors return real angles `theta` such that the
/// corresponding exponential factor is `exp(i * theta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseSpec {
    alpha: [f64; 4],
    beta: [f64; 4],
}

fn reduce_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

impl PhaseSpec {
    /// Phases in radians for indices 1..=3 of each party.
    pub fn new(alpha: [f64; 3], beta: [f64; 3]) -> Result<Self> {
        if let Some(bad) = alpha.iter().chain(&beta).find(|x| !x.is_finite()) {
            return Err(JrspError::InvalidPhases(format!("non-finite angle {bad}")));
        }
        let lift = |v: [f64; 3]| [0.0, reduce_angle(v[0]), reduce_angle(v[1]), reduce_angle(v[2])];
        Ok(Self { alpha: lift(alpha), beta: lift(beta) })
    }

    pub fn from_degrees(alpha: [f64; 3], beta: [f64; 3]) -> Result<Self> {
        Self::new(alpha.map(f64::to_radians), beta.map(f64::to_radians))
    }

    /// Accepts all four angles per party, rejecting a nonzero index-0 angle.
    pub fn from_full(alpha: [f64; 4], beta: [f64; 4]) -> Result<Self> {
        if alpha[0] != 0.0 || beta[0] != 0.0 {
            return Err(JrspError::InvalidPhases(format!(
                "alpha_0 and beta_0 are fixed to zero (got {} and {})",
                alpha[0], beta[0]
            )));
        }
        Self::new([alpha[1], alpha[2], alpha[3]], [beta[1], beta[2], beta[3]])
    }

    pub fn zero() -> Self {
        Self { alpha: [0.0; 4], beta: [0.0; 4] }
    }

    /// Every free angle of both parties set to `degrees`.
    pub fn uniform_degrees(degrees: f64) -> Result<Self> {
        Self::from_degrees([degrees; 3], [degrees; 3])
    }

    pub fn alpha(&self) -> [f64; 4] {
        self.alpha
    }

    pub fn beta(&self) -> [f64; 4] {
        self.beta
    }

    /// `alpha_n +/- beta_m`.
    pub fn joint(&self, n: usize, m: usize, sign: PhaseSign) -> f64 {
        sign.apply(self.alpha[n], self.beta[m])
    }

    /// `(alpha_n + beta_n) - (alpha_m + beta_m)`.
    pub fn joint_difference(&self, n: usize, m: usize) -> f64 {
        self.joint(n, n, PhaseSign::Plus) - self.joint(m, m, PhaseSign::Plus)
    }

    /// `-alpha_n + beta_m`.
    pub fn cross(&self, n: usize, m: usize) -> f64 {
        self.beta[m] - self.alpha[n]
    }

    /// `beta_n +/- beta_m`.
    pub fn bob_pair(&self, n: usize, m: usize, sign: PhaseSign) -> f64 {
        sign.apply(self.beta[n], self.beta[m])
    }

    /// `alpha_n +/- alpha_m`.
    pub fn alice_pair(&self, n: usize, m: usize, sign: PhaseSign) -> f64 {
        sign.apply(self.alpha[n], self.alpha[m])
    }
}

impl Default for PhaseSpec {
    fn default() -> Self {
        Self::zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Party {
    Alice,
    Bob,
}

/// Four orthonormal two-qubit kets over `|00>, |01>, |10>, |11>`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBasis {
    owner: Party,
    vectors: [ComplexMatrix; 4],
}

impl MeasurementBasis {
    /// Builds the basis from one party's four angles.
    fn from_angles(owner: Party, t: [f64; 4]) -> Self {
        let e = |x: f64| Complex64::from_polar(0.5, x);
        let rows = [
            [e(-t[0]), e(-t[1]), e(-t[2]), e(-t[3])],
            [e(-t[0]), -e(-t[1]), e(-t[2]), -e(-t[3])],
            [e(t[2]), e(t[3]), -e(t[0]), -e(t[1])],
            [e(t[2]), -e(t[3]), -e(t[0]), e(t[1])],
        ];
        Self { owner, vectors: rows.map(|r| ComplexMatrix::column(&r)) }
    }

    pub fn owner(&self) -> Party {
        self.owner
    }

    /// Ket for outcome `index` in `1..=4`.
    pub fn vector(&self, index: usize) -> Result<&ComplexMatrix> {
        if !(1..=4).contains(&index) {
            return Err(JrspError::OutcomeIndex(index));
        }
        Ok(&self.vectors[index - 1])
    }

    pub fn vectors(&self) -> &[ComplexMatrix; 4] {
        &self.vectors
    }

    /// 4x4 matrix whose rows are the kets' coefficients.
    pub fn as_matrix(&self) -> ComplexMatrix {
        let rows: Vec<Vec<Complex64>> =
            self.vectors.iter().map(|v| v.as_slice().to_vec()).collect();
        ComplexMatrix::from_rows(&rows)
    }

    /// Max-entry modulus of `G - I` for the Gram matrix `G_ij = <v_i|v_j>`.
    pub fn gram_defect(&self) -> f64 {
        let m = self.as_matrix();
        let gram = m.matmul(&m.adjoint()).expect("4x4");
        gram.max_abs_diff(&ComplexMatrix::identity(4)).expect("4x4")
    }
}

pub fn alice_basis(phases: &PhaseSpec) -> MeasurementBasis {
    MeasurementBasis::from_angles(Party::Alice, phases.alpha)
}

pub fn bob_basis(phases: &PhaseSpec) -> MeasurementBasis {
    MeasurementBasis::from_angles(Party::Bob, phases.beta)
}

/// Target state `1/2 sum_n exp(i(alpha_n + beta_n)) |n>` as a column.
pub fn equatorial_state(phases: &PhaseSpec) -> ComplexMatrix {
    let amps: Vec<Complex64> =
        (0..4).map(|n| Complex64::from_polar(0.5, phases.joint(n, n, PhaseSign::Plus))).collect();
    ComplexMatrix::column(&amps)
}

/// `1/2 (|000000> + |010101> + |101010> + |111111>)` in the `(1,4,2,5,3,6)` layout.
pub fn ghz_channel_state() -> QuantumState {
    let mut amps = vec![Complex64::new(0.0, 0.0); 64];
    for idx in [0b000000, 0b010101, 0b101010, 0b111111] {
        amps[idx] = Complex64::new(0.5, 0.0);
    }
    QuantumState::from_pure(&ComplexMatrix::column(&amps)).expect("64-entry column")
}

/// Which recoveries the receiver may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AssistMode {
    /// Only Alice 1-2 with Bob 1-2.
    Case1Only,
    /// Bob also sends partial phase information: adds Alice 1-2 with Bob 3-4.
    WithBobAssist,
    /// Both senders assist: adds Alice 3-4 with Bob 1-2.
    WithBothAssists,
}

impl AssistMode {
    pub const ALL: [AssistMode; 3] =
        [AssistMode::Case1Only, AssistMode::WithBobAssist, AssistMode::WithBothAssists];

    pub fn covers(self, alice: usize, bob: usize) -> bool {
        match RecoveryCase::classify(alice, bob) {
            Some(RecoveryCase::Direct) => true,
            Some(RecoveryCase::BobAssisted) => self >= AssistMode::WithBobAssist,
            Some(RecoveryCase::AliceAssisted) => self == AssistMode::WithBothAssists,
            None => false,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AssistMode::Case1Only => "case1",
            AssistMode::WithBobAssist => "bob-assist",
            AssistMode::WithBothAssists => "both-assists",
        }
    }
}

impl fmt::Display for AssistMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AssistMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "case1" | "case1-only" => Ok(AssistMode::Case1Only),
            "bob-assist" | "case2" => Ok(AssistMode::WithBobAssist),
            "both-assists" | "case3" => Ok(AssistMode::WithBothAssists),
            _ => Err(format!("unknown mode '{s}' (expected case1, bob-assist or both-assists)")),
        }
    }
}

/// Recovery family an outcome pair belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecoveryCase {
    /// Alice 1-2, Bob 1-2: `I (x) I` or `I (x) Z`.
    Direct,
    /// Alice 1-2, Bob 3-4: diagonal built from Bob's phases.
    BobAssisted,
    /// Alice 3-4, Bob 1-2: diagonal built from Alice's phases.
    AliceAssisted,
}

impl RecoveryCase {
    /// `None` for Alice 3-4 with Bob 3-4, which no mode recovers.
    pub fn classify(alice: usize, bob: usize) -> Option<Self> {
        match (alice <= 2, bob <= 2) {
            (true, true) => Some(RecoveryCase::Direct),
            (true, false) => Some(RecoveryCase::BobAssisted),
            (false, true) => Some(RecoveryCase::AliceAssisted),
            (false, false) => None,
        }
    }
}

fn check_outcome(i: usize) -> Result<()> {
    if (1..=4).contains(&i) {
        Ok(())
    } else {
        Err(JrspError::OutcomeIndex(i))
    }
}

/// `diag(s0 e^{i t(0,2)}, s1 e^{i t(1,3)}, s2 e^{i t(2,0)}, s3 e^{i t(3,1)})` where
/// the sign pattern depends on the parity of `other + assisted`.
fn assisted_diagonal(
    other: usize,
    assisted: usize,
    pair_angle: impl Fn(usize, usize) -> f64,
) -> ComplexMatrix {
    let signs: [f64; 4] = if (other + assisted).is_multiple_of(2) {
        [1.0, 1.0, -1.0, -1.0]
    } else {
        [1.0, -1.0, -1.0, 1.0]
    };
    let entries: Vec<Complex64> =
        (0..4).map(|n| Complex64::from_polar(signs[n], pair_angle(n, n ^ 2))).collect();
    ComplexMatrix::diagonal(&entries)
}

/// Receiver's correction on (3,6) for outcome pair `(alice, bob)`, or `None`
/// when the pair is a failure under `mode`.
pub fn recovery_operator(
    alice: usize,
    bob: usize,
    phases: &PhaseSpec,
    mode: AssistMode,
) -> Result<Option<ComplexMatrix>> {
    check_outcome(alice)?;
    check_outcome(bob)?;
    if !mode.covers(alice, bob) {
        return Ok(None);
    }
    let op = match RecoveryCase::classify(alice, bob) {
        Some(RecoveryCase::Direct) if alice == bob => ComplexMatrix::identity(4),
        Some(RecoveryCase::Direct) => {
            let one = Complex64::new(1.0, 0.0);
            ComplexMatrix::diagonal(&[one, -one, one, -one])
        }
        Some(RecoveryCase::BobAssisted) => {
            assisted_diagonal(alice, bob, |n, m| phases.bob_pair(n, m, PhaseSign::Plus))
        }
        Some(RecoveryCase::AliceAssisted) => {
            assisted_diagonal(bob, alice, |n, m| phases.alice_pair(n, m, PhaseSign::Plus))
        }
        None => return Ok(None),
    };
    Ok(Some(op))
}

/// One of the 16 joint measurement branches.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeRecord {
    pub alice_index: usize,
    pub bob_index: usize,
    /// Trace of the unnormalized branch operator.
    pub weight: f64,
    pub success: bool,
    pub recovery: Option<ComplexMatrix>,
    /// Unnormalized operator on (3,6), after recovery when one exists.
    pub post_state: QuantumState,
    /// `<psi| post_state |psi>`, unnormalized.
    pub branch_fidelity: f64,
}

impl OutcomeRecord {
    /// Branch fidelity divided by branch weight; `None` for empty branches.
    pub fn normalized_fidelity(&self) -> Option<f64> {
        (self.weight > 0.0).then(|| self.branch_fidelity / self.weight)
    }
}

/// Channel state after the pair-correlated noise on (1,4) and (2,5).
pub fn noisy_channel_state(noise: Option<&KrausChannel>) -> Result<QuantumState> {
    let ghz = ghz_channel_state();
    match noise {
        Some(ch) => apply_correlated_kraus(&ghz, ch, ALICE_PAIR, BOB_PAIR),
        None => Ok(ghz),
    }
}

/// Enumerates all 16 branches, Alice-major.
pub fn run_jrsp(
    phases: &PhaseSpec,
    noise: Option<&KrausChannel>,
    mode: AssistMode,
) -> Result<Vec<OutcomeRecord>> {
    let shared = noisy_channel_state(noise)?;
    let target = equatorial_state(phases);
    let alice = alice_basis(phases);
    let bob = bob_basis(phases);
    // After Alice's projection the survivors are (2,5,3,6).
    let bob_local = (QubitAddress(0), QubitAddress(1));
    let mut records = Vec::with_capacity(16);
    for a in 1..=4 {
        let (_, after_alice) = project_two_qubit(&shared, alice.vector(a)?, ALICE_PAIR)?;
        for b in 1..=4 {
            let (weight, branch) = project_two_qubit(&after_alice, bob.vector(b)?, bob_local)?;
            let recovery = recovery_operator(a, b, phases, mode)?;
            let post_state = match &recovery {
                Some(u) => apply_unitary(&branch, u, &[QubitAddress(0), QubitAddress(1)])?,
                None => branch,
            };
            let branch_fidelity = pure_overlap(&post_state, &target)?;
            records.push(OutcomeRecord {
                alice_index: a,
                bob_index: b,
                weight,
                success: recovery.is_some(),
                recovery,
                post_state,
                branch_fidelity,
            });
        }
    }
    Ok(records)
}

/// Success weight over total weight, with success judged by `mode`.
pub fn success_probability(records: &[OutcomeRecord], mode: AssistMode) -> f64 {
    let total: f64 = records.iter().map(|r| r.weight).sum();
    let ok: f64 =
        records.iter().filter(|r| mode.covers(r.alice_index, r.bob_index)).map(|r| r.weight).sum();
    ok / total
}

fn direct_overlaps<'a>(
    records: &'a [OutcomeRecord],
    phases: &PhaseSpec,
) -> Result<impl Iterator<Item = (f64, f64)> + 'a> {
    let target = equatorial_state(phases);
    let mut out = Vec::new();
    for r in records {
        if RecoveryCase::classify(r.alice_index, r.bob_index) == Some(RecoveryCase::Direct)
            && r.recovery.is_some()
        {
            out.push((r.weight, pure_overlap(&r.post_state, &target)?));
        }
    }
    Ok(out.into_iter())
}

/// Fidelity over the four direct-recovery branches: their unnormalized
/// overlaps with the target, summed and divided by the ideal weight 1/4. Not
/// renormalized by the noisy branch weights.
pub fn jrsp_fidelity(records: &[OutcomeRecord], phases: &PhaseSpec) -> Result<f64> {
    Ok(direct_overlaps(records, phases)?.map(|(_, f)| f).sum::<f64>() / IDEAL_DIRECT_WEIGHT)
}

/// Same branches as [`jrsp_fidelity`] but divided by their actual total weight.
pub fn renormalized_fidelity(records: &[OutcomeRecord], phases: &PhaseSpec) -> Result<f64> {
    let (w, f) =
        direct_overlaps(records, phases)?.fold((0.0, 0.0), |(w, f), (bw, bf)| (w + bw, f + bf));
    Ok(f / w)
}

/// How branch overlaps are aggregated into one fidelity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum FidelityConvention {
    /// [`jrsp_fidelity`].
    #[default]
    IdealWeight,
    /// [`renormalized_fidelity`].
    Renormalized,
}

/// Runs the pipeline and aggregates the fidelity under `convention`.
pub fn simulated_fidelity(
    phases: &PhaseSpec,
    noise: Option<&KrausChannel>,
    convention: FidelityConvention,
) -> Result<f64> {
    let records = run_jrsp(phases, noise, AssistMode::Case1Only)?;
    match convention {
        FidelityConvention::IdealWeight => jrsp_fidelity(&records, phases),
        FidelityConvention::Renormalized => renormalized_fidelity(&records, phases),
    }
}
