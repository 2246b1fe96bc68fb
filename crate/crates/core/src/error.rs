use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u32),

    #[error("modulus mismatch: expected {expected}, got {got}")]
    ModulusMismatch { expected: u32, got: u32 },

    #[error("length mismatch: expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("residue {value} not in 0..{m}")]
    ResidueOutOfRange { value: u64, m: u32 },

    #[error("modulus {0} is not a power of two")]
    NotPowerOfTwo(u32),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("state space of {required} states exceeds cap of {cap} states (2^{cap_bits})")]
    StateCapExceeded {
        required: u128,
        cap: u64,
        cap_bits: u32,
    },

    #[error("Z_2 solver found no winning sequence for projected state {0}")]
    Z2SolverFailed(String),

    #[error("{0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
