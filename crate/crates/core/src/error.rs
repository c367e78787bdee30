use thiserror::Error;

/// Errors raised by state, matrix, gate and pipeline constructors.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("amplitude count {0} is not a power of two >= 2")]
    BadLength(usize),
    #[error("vector norm {norm} is not 1 (tolerance {tol:e})")]
    NotNormalized { norm: f64, tol: f64 },
    #[error("cannot renormalize a zero vector")]
    ZeroNorm,
    #[error("basis index {index} out of range for {qubits} qubit(s)")]
    IndexOutOfRange { index: usize, qubits: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("qubit position {position} invalid for a {qubits}-qubit register")]
    BadPosition { position: usize, qubits: usize },
    #[error("gate positions must be distinct, got {0:?}")]
    OverlappingPositions(Vec<usize>),
    #[error("index map is not a bijection on 0..{0}")]
    NotBijective(usize),
    #[error("matrix is not unitary (max |UᵀU - I| = {0:e})")]
    NotUnitary(f64),
    #[error("matrix is not square: {rows} rows, row {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("rotation plane ({p}, {q}) invalid for dimension {dim}")]
    BadPlane { p: usize, q: usize, dim: usize },
    #[error("state does not have the expected structure: {0}")]
    Structure(String),
    #[error("shot count must be at least 1")]
    ZeroShots,
    #[error("unsupported ordering tag {0:?}, expected \"msb-first\"")]
    Ordering(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
