use thiserror::Error;

/// Everything that can go wrong in the library proper. CLI-only failures
/// (argument parsing, I/O) are handled in the binary.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension must be at least 1, got {0}")]
    InvalidDimension(i64),

    #[error("folded hypercube is undefined at n=1: the complement matching would duplicate the only hypercube edge")]
    FoldedDimensionTooSmall,

    #[error("2^{n} vertices exceeds the configured budget of 2^{max_n}")]
    VertexBudgetExceeded { n: u32, max_n: u32 },

    #[error("vertex label {label} is out of range for dimension {n}")]
    InvalidVertex { label: u64, n: u32 },

    #[error("vertices must be distinct")]
    IdenticalVertices,

    #[error("{0} is not a member of the ambient set")]
    NotAMember(u32),

    #[error("g={g} is out of range: {reason}")]
    GOutOfRange { g: i64, reason: String },

    #[error("formula domain violation: {0}")]
    FormulaDomain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a valid cycle: {0}")]
    InvalidCycle(String),

    #[error("no {target}-component cut found within the search cap/budget")]
    NoCutWithinBudget { target: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
