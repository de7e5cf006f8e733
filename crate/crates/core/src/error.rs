use thiserror::Error;

/// Errors produced by the algebra toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars belong to different fields ({left} vs {right})")]
    FieldMismatch { left: String, right: String },
    #[error("characteristic 2 is not supported (p = 2)")]
    CharTwoRejected,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("bad scalar {text:?}: {reason}")]
    BadScalar { text: String, reason: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not symmetric at entry ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("structure constants are not anti-symmetric at ({i}, {j}, {k})")]
    NotAntisymmetric { i: usize, j: usize, k: usize },
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("target value must be non-zero")]
    ZeroTarget,
    #[error("brute-force oracle limited to p <= 5 and dim <= 3 (got p = {p}, dim = {dim})")]
    OracleTooLarge { p: u64, dim: usize },
    #[error("list must be non-empty")]
    EmptyList,
    #[error("doubling parameter must be non-zero")]
    ZeroMu,
    #[error(
        "{0} norms given; vector product algebras only exist in dimensions 0, 1, 3 and 7, \
         so at most 3 base norms are allowed"
    )]
    TooManyNorms(usize),
    #[error("norm #{0} is zero")]
    ZeroNorm(usize),
    #[error("not a vector product algebra: {0}")]
    NotAnAlgebra(String),
    #[error("unsupported dimension {0}")]
    BadDimension(usize),
    #[error("not a unital composition algebra: {0}")]
    NotComposition(String),
    #[error("commutator of basis elements {i} and {j} leaves the complement of the identity")]
    CommutatorEscapesComplement { i: usize, j: usize },
    #[error("norm mismatch at base element {index}")]
    NormMismatch { index: usize },
    #[error("set is not multiplicatively independent: {0}")]
    NotIndependent(String),
    #[error("morphism verification failed: {0}")]
    VerificationFailed(String),
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("shape error at {path}: expected {expected} entries, found {found}")]
    Shape {
        path: String,
        expected: usize,
        found: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
