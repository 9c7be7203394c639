//! One error type for the whole crate.
//!
//! Everything that can go wrong is either a caller mistake (bad modulus, bad
//! shape, malformed literal), a resource refusal (memory budget), or a
//! corrupt/inconsistent input (file checksums, truncated tables). Hot-path
//! code never constructs errors; preconditions there are `debug_assert!`s.

use std::io;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),

    #[error("modulus {0} exceeds the supported range (residues are bytes)")]
    ModulusTooLarge(u64),

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("code space {required} exceeds the addressable range")]
    CodeSpaceOverflow { required: u128 },

    #[error("non-invertible element")]
    NonInvertible,

    #[error("shape mismatch between operands")]
    ShapeMismatch,

    #[error("mode {mode} out of range for order-{order} tensors")]
    ModeOutOfRange { mode: usize, order: u8 },

    #[error("simple tensors require non-zero u")]
    ZeroVector,

    #[error("expected a vector of length {expected}, got {got}")]
    WrongVectorLength { expected: u8, got: usize },

    #[error("residue {value} out of range for modulus {modulus}")]
    ResidueOutOfRange { value: u64, modulus: u8 },

    #[error("symmetry violation at tuple ({})", format_tuple(.tuple))]
    SymmetryViolation { tuple: Vec<u8> },

    #[error("rank {rank} out of range (table stops at rank {max_rank})")]
    RankOutOfRange { rank: u8, max_rank: u8 },

    #[error("rank-{rank} layer is empty")]
    EmptyLayer { rank: u8 },

    #[error("memory budget exceeded: need {required_bytes} bytes, budget is {budget_bytes} bytes")]
    MemoryBudget { required_bytes: u64, budget_bytes: u64 },

    #[error("cannot classify truncated stratification (truncated at rank {max_rank})")]
    Truncated { max_rank: u8 },

    #[error("group enumeration needs {candidates} candidate matrices, beyond the addressable range")]
    GroupTooLarge { candidates: u128 },

    #[error("matrix rank requires order-2 tensors, got order {k}")]
    RequiresOrderTwo { k: u8 },

    #[error("cannot parse tensor literal: {0}")]
    LiteralParse(String),

    #[error("compiled action disagrees with the definitional product (element {element_index}, code {code})")]
    ActionMismatch { element_index: u64, code: u64 },

    #[error("bad table file: {0}")]
    FileFormat(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

fn format_tuple(tuple: &[u8]) -> String {
    let parts: Vec<String> = tuple.iter().map(|i| i.to_string()).collect();
    parts.join(",")
}
