use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system {family}{rank}: {reason}")]
    InvalidRootSystem {
        family: char,
        rank: usize,
        reason: &'static str,
    },

    #[error("Weyl group of {0} exceeds the size guard of {1} elements")]
    GroupTooLarge(String, usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("polytopes belong to different root systems")]
    RootSystemMismatch,

    #[error("only negative-amplitude vertices may be fired (vertex {vertex} has amplitude {amplitude})")]
    NotFireable { vertex: usize, amplitude: i64 },

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("configuration {0} is forbidden: some amplitude is below -1")]
    Forbidden(String),

    #[error("max_steps must be positive")]
    NonPositiveSteps,

    #[error("weight {0} is not strictly dominant")]
    NotStrictlyDominant(String),

    #[error("dilation factor must be at least 1")]
    BadDilation,

    #[error("not a special ample polytope: {0}")]
    InvalidPolytope(String),

    #[error("{point} is not congruent to the vertices modulo the root lattice")]
    WrongCoset { point: String },

    #[error("{0} is not a lattice point of the polytope")]
    NotInPolytope(String),

    #[error("{0} is the vertex of the chamber; there is no progressive root")]
    AtVertex(String),

    #[error("empty polytope list")]
    EmptyList,

    #[error("invariant violated: {0}")]
    Internal(String),

    #[error("search space of {0} candidates exceeds the guard")]
    SearchTooLarge(u128),

    #[error("{0}")]
    Unsupported(String),

    #[error("polytope spec: {0}")]
    Spec(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
