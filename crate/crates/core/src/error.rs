use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("register of {requested} qubits is outside the supported range 1..={max}")]
    Capacity { requested: usize, max: usize },

    #[error("qubit {qubit} is out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("qubit {0} appears more than once in a gate")]
    OverlappingQubits(usize),

    #[error("malformed gate: {0}")]
    InvalidGate(String),

    #[error("state has {found} qubits but the circuit expects {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("series has no nonzero component to encode")]
    Degenerate,

    #[error("infeasible scaling: total slot weight {total_weight} exceeds 1 (largest contribution from slot n={slot})")]
    Infeasible { slot: usize, total_weight: f64 },

    #[error("layout holds {available} input qubits but slot n={needed} needs more")]
    LayoutTooSmall { needed: usize, available: usize },

    #[error("gate outside the export gate set: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
