use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("sign matrix invalid: {0}")]
    InvalidSignMatrix(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("torus elements built over different sign matrices")]
    MismatchedTorus,
    #[error("element is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("weight is not a root: {0}")]
    NotARoot(String),
    #[error("toral basis does not act diagonally: {0}")]
    NonDiagonalAction(String),
    #[error("form is degenerate on the toral subalgebra")]
    DegenerateToralForm,
    #[error("isotropic root has no reflection")]
    IsotropicRoot,
    #[error("no sl2 partner found: {0}")]
    NoPartner(String),
    #[error("ad x is not nilpotent within {0} steps")]
    NonNilpotent(usize),
    #[error("axiom violation: {0}")]
    AxiomViolation(String),
    #[error("cocycle condition fails: {0}")]
    CocycleViolation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
