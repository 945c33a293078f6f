use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid invariant factor {0}: every factor must be at least 2")]
    InvalidFactor(i64),
    #[error("group of order {order} exceeds the enumeration bound {bound}")]
    Capacity { order: u64, bound: u64 },
    #[error("subgroup or element does not belong to the expected parent group")]
    ParentMismatch,
    #[error("group-ring elements live over different groups")]
    GroupMismatch,
    #[error("generators span a lattice of rank {rank}, expected full rank {expected}")]
    NotFullRank { rank: usize, expected: usize },
    #[error("lattice is not contained in the target lattice")]
    Containment,
    #[error("module has an infinite cokernel")]
    Infinite,
    #[error("character value vanishes (degenerate character {index})")]
    DegenerateCharacter { index: u32 },
    #[error("precision exponent {given} is below the required {required}")]
    Precision { given: u32, required: u32 },
    #[error("{0}")]
    Scope(String),
    #[error("no unit solution exists: {0}")]
    NoUnit(String),
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
