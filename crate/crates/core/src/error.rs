use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group parameters r={r}, p={p}, n={n}: {reason}")]
    InvalidGroup { r: u32, p: u32, n: u32, reason: String },

    #[error("invalid partition index {lambda:?} (u={u}) for rank {n}: {reason}")]
    InvalidPartition {
        lambda: Vec<u32>,
        u: u32,
        n: usize,
        reason: String,
    },

    #[error("subspace is not in the intersection lattice: {0}")]
    NotInLattice(String),

    #[error("group order {order} exceeds the enumeration bound {bound}")]
    OrderBound { order: u128, bound: u128 },

    #[error("Molien average at degree {degree} is not an integer")]
    NonIntegerMolien { degree: usize },

    #[error("Hilbert series does not factor as a finite product of 1/(1-t^d): {0}")]
    NotReflectionGroup(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown group {0:?}")]
    UnknownGroup(String),

    #[error("unknown orbit label {label:?} in group {group}")]
    UnknownLabel { group: String, label: String },

    #[error("table data error at line {line}: {msg}")]
    TableData { line: usize, msg: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
