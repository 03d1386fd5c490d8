use thiserror::Error;

/// Errors raised by the exact algorithms in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("polyhedron is not pointed (constraint matrix has rank {rank} < {dim})")]
    NotPointed { rank: usize, dim: usize },

    #[error("polyhedron is empty")]
    Empty,

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("point is not in the cone spanned by the given rays")]
    NotInCone,

    #[error("cone slice is unbounded: the hyperplane does not normalize the cone")]
    SliceUnbounded,

    #[error("quadratic form takes negative values on the cone (slice minimum {minimum})")]
    NegativeOnCone { minimum: String },

    #[error("matrix is not symmetric: entry ({row}, {col}) is {upper} but ({col}, {row}) is {lower}")]
    NotSymmetric {
        row: usize,
        col: usize,
        upper: String,
        lower: String,
    },

    #[error("integer-variable count {p} exceeds dimension {n}")]
    BadIntegerCount { p: usize, n: usize },

    #[error("enumeration of {what} exceeds the limit of {limit} items")]
    TooLarge { what: &'static str, limit: u64 },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
