use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Shape(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("element is not homogeneous")]
    NonHomogeneous,

    #[error("element is not invertible")]
    NotInvertible,

    #[error("quadratic form violates {axiom} at basis pair ({i}, {j})")]
    InvalidForm {
        axiom: &'static str,
        i: usize,
        j: usize,
    },

    #[error("coefficient algebra table violates {0}")]
    InvalidTable(String),

    #[error("coefficient subalgebra rejected: {0}")]
    InvalidSubalgebra(String),

    #[error("form is not in the required block shape: {0}")]
    BlockShape(String),

    #[error("map is not a derivation of the coefficient algebra")]
    NotADerivation,

    #[error("pair violates its defining conditions: {0}")]
    InvalidPair(String),

    #[error("instance dimension {dim} exceeds the limit {max} (use --force or --max-dim)")]
    SizeLimit { dim: usize, max: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
