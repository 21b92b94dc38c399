use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("state is not homogeneous in {0}")]
    NotHomogeneous(&'static str),
    #[error("species {species} is not available in the {algebra} algebra")]
    InvalidSpecies { species: String, algebra: String },
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: u32, rank: u32 },
    #[error("operation requires algebra kind {expected}, got {found}")]
    InvalidKind { expected: &'static str, found: String },
    #[error("empty argument list")]
    Empty,
    #[error("matrix is singular")]
    Singular,
    #[error("generator {0} is not invariant under the action")]
    NotInvariant(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("not implemented: {0}")]
    Unsupported(String),
    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
