use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
///
/// `Internal` is reserved for violations of invariants that are theorems for
/// the inputs we accept; hitting one means a bug, and the CLI maps it to a
/// distinct exit code.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquareMatrix { rows: usize, cols: usize },

    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    #[error("zero denominator in rational literal")]
    ZeroDenominator,

    #[error("polytope needs at least {min} vertices in dimension {dim}, found {count}")]
    TooFewVertices { count: usize, min: usize, dim: usize },

    #[error("duplicate vertex {vertex}")]
    DuplicateVertex { vertex: String },

    #[error("vertex {vertex} is redundant (inside the hull of the others)")]
    RedundantVertex { vertex: String },

    #[error("vertex set is not full-dimensional")]
    NotFullDimensional,

    #[error("origin lies on the boundary of the polytope")]
    OriginOnBoundary,

    #[error("origin lies outside the polytope")]
    OriginOutside,

    #[error("vertex {vertex} of a fan polytope is not primitive")]
    NonPrimitiveVertex { vertex: String },

    #[error("halfspace region is unbounded")]
    Unbounded,

    #[error("polytope is not reflexive")]
    NotReflexive,

    #[error("operation requires a fan-lattice (N-side) polytope")]
    NotFanLattice,

    #[error("dilation factor must be >= 1, got {got}")]
    BadDilation { got: i64 },

    #[error("enumeration box has {cells} cells, above the limit {limit}")]
    ResourceLimit { cells: u128, limit: u128 },

    #[error("barycenter pairing {value} with facet {facet} is not positive")]
    NonpositivePairing { facet: usize, value: String },

    #[error("barycenter is zero; no boundary point Q exists")]
    BarycenterZero,

    #[error("piecewise linear function has no pieces")]
    EmptyPiecewise,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal invariant violated: {message}")]
    Internal { message: String },
}

impl Error {
    pub fn internal(message: impl Into<String>) -> Self {
        Error::Internal {
            message: message.into(),
        }
    }

    /// Process exit code the CLI should use for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Internal { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
