use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count {0} outside supported range 1..=24")]
    VariableCount(usize),

    #[error("expected {expected} bits, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("variable index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("variable {0} assigned more than once")]
    DuplicateAssignment(usize),

    #[error("restriction must fix at least one variable")]
    EmptyRestriction,

    #[error("restriction leaves no free variable")]
    NoFreeVariables,

    #[error("malformed hex truth table: {0}")]
    InvalidHex(String),

    #[error("invalid modulus {0}: must be at least 2")]
    InvalidModulus(u64),

    #[error("enumeration of {filter} functions is limited to n <= {max}, got {n}")]
    EnumerationTooLarge { filter: &'static str, n: usize, max: usize },

    #[error("invalid partition: worker {worker} of {total}")]
    InvalidPartition { worker: u64, total: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("input function is degenerate")]
    InputDegenerate,

    #[error("input function is not symmetric")]
    NotSymmetric,

    /// The CRT contradiction needs at least two distinct prime factors.
    #[error("modulus {0} is a prime power; the CRT witness needs two distinct prime factors")]
    PrimePowerModulus(u64),

    /// A nondegenerate function with no nondegenerate single-variable restriction.
    #[error("no nondegenerate single-variable restriction exists for {hex}")]
    TheoremViolation { hex: String },

    #[error("witness claim violated for {hex}: {reason}")]
    ClaimViolation { hex: String, reason: String },
}
