use thiserror::Error;

/// Everything that can go wrong inside the library.
///
/// Variants fall into three families (see [`ErrorKind`]) so that front ends
/// can map them to exit codes without string matching.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("subspace is not contained in the ambient subspace")]
    NotSubspace,
    #[error("multiplication is not associative on basis triple ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("basis element 0 is not a two-sided unit (fails against basis element {0})")]
    UnitViolation(usize),
    #[error("Frobenius form is degenerate (gram matrix singular)")]
    DegenerateForm,
    #[error("radical unavailable: characteristic {p} does not exceed dimension {dim} and the algebra is not commutative")]
    RadicalUnavailable { p: u64, dim: usize },
    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),
    #[error("map is not a bimodule homomorphism: {0}")]
    NotLinear(String),
    #[error("window too small: {0}")]
    Window(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("precondition: {0}")]
    Precondition(String),
}

/// Coarse classification used for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Precondition,
    Property,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse(_) | Error::NotPrime(_) => ErrorKind::Parse,
            Error::Verification(_) => ErrorKind::Property,
            _ => ErrorKind::Precondition,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
