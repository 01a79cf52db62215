use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    /// The leftmost block of a matrix handed to `systematic_reduce` is not
    /// invertible. Run `select_independent_columns` first.
    #[error("leftmost block is singular at column {column}; reorder columns with select_independent_columns first")]
    SingularBasis { column: usize },

    #[error("row {row} reduces to 0 = 1: syndrome is not in the column space")]
    InconsistentSystem { row: usize },

    #[error("alist parse error at token {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("alist integrity error: {0}")]
    Integrity(String),

    #[error("code dimension {dim} exceeds enumeration limit {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("candidate with weight {weight} is not a codeword")]
    NotACodeword { weight: usize },

    #[error("an enumerated error pattern violates the reduced system in trial {trial}")]
    PatternCheck { trial: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
