//! Exact density-matrix simulation of joint remote state preparation (JRSP)
//! of a two-qubit equatorial state over two GHZ triples, with six
//! single-qubit noise models applied pair-wise to the senders' qubits.
//!
//! * [`tensor`]: dense complex matrices and qubit-addressed operations.
//! * [`channels`]: Kraus sets and their completeness check.
//! * [`protocol`]: bases, recovery operators and the 16-branch pipeline.
//! * [`analytic`]: closed-form fidelities and their comparison with simulation.

pub mod analytic;
pub mod channels;
pub mod error;
pub mod protocol;
pub mod tensor;

pub use analytic::{
    closed_form_fidelity, closed_form_fidelity_with, compare_with_options, compare_with_simulation,
    lambda_grid, max_deviation, BracketTerm, ClosedFormKind, CompareOptions, ComparisonRow,
    DepolarizingGrouping, AGREEMENT_TOL,
};
pub use channels::{
    completeness_defect, kraus_set, kraus_set_with, KrausChannel, NoiseKind, PhaseDampingVariant,
};
pub use error::{JrspError, Result};
pub use num_complex::Complex64;
pub use protocol::{
    alice_basis, bob_basis, equatorial_state, ghz_channel_state, jrsp_fidelity,
    noisy_channel_state, recovery_operator, renormalized_fidelity, run_jrsp, simulated_fidelity,
    success_probability, AssistMode, FidelityConvention, MeasurementBasis, OutcomeRecord, Party,
    PhaseSign, PhaseSpec, RecoveryCase,
};
pub use tensor::{
    apply_correlated_kraus, apply_unitary, kron, project_two_qubit, pure_overlap, validate_state,
    ComplexMatrix, QuantumState, QubitAddress, StateViolation,
};
