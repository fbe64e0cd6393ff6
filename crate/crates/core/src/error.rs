use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit index {index} out of range for {n} qubits")]
    QubitOutOfRange { index: usize, n: usize },
    #[error("CNOT control and target must differ (got {0})")]
    SameControlTarget(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("closure exceeded the size bound of {0}")]
    CapExceeded(usize),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid subsystem: {0}")]
    InvalidSubsystem(String),
    #[error("graph error: {0}")]
    Graph(String),
    #[error("tolerance failure: {0}")]
    Tolerance(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
