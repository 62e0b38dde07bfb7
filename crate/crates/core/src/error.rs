use thiserror::Error;

/// Errors produced by the synthesis pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sequence is empty")]
    EmptySequence,
    #[error("invalid character {found:?} at position {position}")]
    InvalidCharacter { position: usize, found: char },
    #[error("sequence is constant (weight must satisfy 0 < wt < n)")]
    ConstantSequence,
    #[error("pool permutation does not match the sequence: {0}")]
    PermutationMismatch(String),
    #[error("invalid state sequence: {0}")]
    InvalidStateSequence(String),
    #[error("state {state} is out of range for a {k}-stage machine")]
    StateOutOfRange { state: u64, k: u32 },
    #[error("iteration from the initial state did not return within 2^{k} steps")]
    NonCyclicReachability { k: u32 },
    #[error("{k} variables exceeds the supported maximum of {max}")]
    VariableCountTooLarge { k: u32, max: u32 },
    #[error("invalid optimizer configuration: {0}")]
    InvalidConfig(String),
    #[error("malformed machine document: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
