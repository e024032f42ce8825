use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("odd size {0} where an even size is required")]
    OddSize(usize),
    #[error("permutation {0} is not signed")]
    NotSigned(String),
    #[error("singular matrix")]
    Singular,
    #[error("matrix is not unipotent upper triangular")]
    NotUnipotent,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid Hessenberg vector: {0}")]
    InvalidVector(String),
    #[error("invalid Hessenberg space: {0}")]
    InvalidSpace(String),
    #[error("subspace is not sigma-stable")]
    NotSigmaStable,
    #[error("rank too small: {0}")]
    RankTooSmall(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
