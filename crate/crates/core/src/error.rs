use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("not antisymmetric: {0}")]
    NotAntisymmetric(String),

    #[error("jet inversion needs an identity leading coefficient")]
    NonIdentityLead,

    #[error("frame is not invertible: {0}")]
    SingularFrame(String),

    #[error("Jacobi identity fails at (i,j,k) = ({i},{j},{k}) (1-based)")]
    JacobiViolated { i: usize, j: usize, k: usize },

    #[error("not a local Lie group: {0}")]
    NotLocalLie(String),

    #[error("degree {degree} exceeds dimension {n}")]
    DegreeTooLarge { degree: usize, n: usize },

    #[error("cochain is not closed")]
    NotClosed,

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
