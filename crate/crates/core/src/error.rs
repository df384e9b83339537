use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum JrspError {
    #[error("matrix dimension {rows}x{cols} exceeds the 4096x4096 limit")]
    DimensionOverflow { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("operator is not unitary (max |UU^dag - I| = {defect:e})")]
    NotUnitary { defect: f64 },

    #[error("vector is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },

    #[error("qubit address {index} out of range for a {num_qubits}-qubit state")]
    AddressOutOfRange { index: usize, num_qubits: usize },

    #[error("qubit address {0} used more than once")]
    DuplicateAddress(usize),

    #[error("malformed Kraus operator: {0}")]
    MalformedKraus(String),

    #[error("decoherence rate {0} outside [0, 1]")]
    LambdaOutOfRange(f64),

    #[error("invalid phases: {0}")]
    InvalidPhases(String),

    #[error("measurement index {0} outside 1..=4")]
    OutcomeIndex(usize),
}

pub type Result<T> = std::result::Result<T, JrspError>;
