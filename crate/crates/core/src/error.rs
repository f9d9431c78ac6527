use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count {0} outside supported range [{1}, {2}]")]
    QubitCountOutOfRange(usize, usize, usize),

    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitIndexOutOfRange { index: usize, n_qubits: usize },

    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("code distance {0} must be odd and within [3, 25]")]
    InvalidDistance(usize),

    #[error("decoder invariant violated: {0}")]
    DecoderInvariant(String),

    #[error("no crossing of logical-error curves inside the epsilon grid")]
    NoCrossing,
}

pub type Result<T> = std::result::Result<T, Error>;
