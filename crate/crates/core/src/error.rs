use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("quiver has an oriented cycle: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("expected a vector with {expected} entries, got {found}")]
    Length { expected: usize, found: usize },
    #[error("dimension vectors must be nonnegative, got {0}")]
    NegativeDimension(String),
    #[error("Euler form of {a} and {b} is {value}, expected 0")]
    EulerNonzero { a: String, b: String, value: i64 },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("singular block at vertex `{0}`")]
    Singular(String),
    #[error("weight {0} is not in the cone")]
    NotInCone(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("exhaustive search over {0} representations exceeds the feasibility guard")]
    Infeasible(String),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
