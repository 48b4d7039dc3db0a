use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit count mismatch: expected {expected}, got {actual}")]
    QubitMismatch { expected: usize, actual: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("operator flagged Hermitian has imaginary expectation residue {0:e}")]
    HermitianResidue(f64),

    #[error("dense conversion refused: {n_qubits} qubits exceeds the limit of {limit}")]
    SizeGuard { n_qubits: usize, limit: usize },

    #[error("matrix is singular to working precision (pivot {pivot:e}, scale {scale:e})")]
    Singular { pivot: f64, scale: f64 },

    #[error("degenerate state: <psi|A^dag A|psi> = {0:e}")]
    DegenerateState(f64),

    #[error("non-finite cost encountered")]
    NonFinite,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
