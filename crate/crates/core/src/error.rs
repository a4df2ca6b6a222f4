use thiserror::Error;

use crate::bigraded::Bigrade;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not a prime below 2^16")]
    NonPrimeModulus(u32),

    #[error("nonzero coefficient for generator {gen} at {gen_degree} in relation {rel} at {rel_degree}, which is not above it")]
    IllegalEntry {
        gen: usize,
        rel: usize,
        gen_degree: Bigrade,
        rel_degree: Bigrade,
    },

    #[error("degree {0} is not finite")]
    InfiniteDegree(Bigrade),

    #[error("coefficient matrix is {rows}x{cols}, expected {gens}x{rels}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        gens: usize,
        rels: usize,
    },

    #[error("grid box {requested} does not cover the degrees up to {needed}")]
    BoxTooSmall { requested: Bigrade, needed: Bigrade },

    #[error("invalid hook: {0}")]
    InvalidHook(String),

    #[error("invalid bar [{birth}, {death})")]
    InvalidBar { birth: u32, death: u32 },

    #[error("unknown gallery module `{0}`")]
    UnknownName(String),

    #[error("endomorphism space has dimension {dim}, above the oracle threshold {threshold}")]
    ThresholdExceeded { dim: usize, threshold: usize },

    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("{line}:{col}: unknown generator `{name}`")]
    UnknownGenerator {
        line: usize,
        col: usize,
        name: String,
    },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
