use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected {expected} coordinates, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("rank must be at least 1, got {0}")]
    InvalidRank(usize),
    #[error("{0} is not a vertex of the lattice model")]
    NotAVertex(String),
    #[error("sign pattern must contain both '+' and '-'")]
    DegenerateSigns,
    #[error("not a nonempty proper coordinate subset (mask {mask:#b}, rank {rank})")]
    InvalidStep { mask: u64, rank: usize },
    #[error("ladder rungs must be nonnegative with minimum 0")]
    UnnormalizedLadder,
    #[error("integer overflow")]
    Overflow,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("matrix is singular")]
    Singular,
    #[error("determinant is not a power of {0}")]
    NotPrimePower(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("resource limit exceeded: {vertices} vertices discovered (limit {limit}), last complete layer {completed_layers}")]
    LimitExceeded {
        limit: usize,
        vertices: usize,
        completed_layers: usize,
    },
    #[error("radius {radius} too small; at least {required} required")]
    RadiusTooSmall { radius: usize, required: usize },
}
