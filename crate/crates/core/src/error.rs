use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("curve equation is not square-free")]
    NotSquareFree,
    #[error("branch {branch} does not lie on the curve")]
    NotOnCurve { branch: String },
    #[error("branch {branch} declares multiplicity {declared} but its multiplicity is {actual}")]
    InconsistentMultiplicity {
        branch: String,
        declared: u32,
        actual: u32,
    },
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("unresolved locus: {0}")]
    UnresolvedLocus(String),
    #[error("branches at {point} need irrational Puiseux coefficients; supply them in parametrized mode")]
    IrrationalCoefficients { point: String },
    #[error("truncation order {order} is insufficient")]
    TruncationInsufficient { order: u32 },
    #[error("semigroup enumeration bound {bound} is below the stable range")]
    BoundTooSmall { bound: u32 },
    #[error("genus formula gives {value}; singular data is inconsistent with the degree")]
    NegativeGenus { value: i64 },
    #[error("point {point} is not classified by the open set")]
    UnclassifiedPoint { point: String },
    #[error("point {point} is exterior but the complement is declared locally polar")]
    ExteriorUnderPolar { point: String },
    #[error("the complement is not polar, so the quantity is not finite")]
    NonPolarComplement,
    #[error("exact dimension unavailable: {0}")]
    UnsupportedGenus(String),
    #[error("normalization position of branch {branch} is unknown")]
    MissingNormalization { branch: String },
    #[error("sample grid underflows before the asymptotic regime: {0}")]
    GridUnderflow(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code of the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::NotHomogeneous
            | Error::NotSquareFree
            | Error::NotOnCurve { .. }
            | Error::InconsistentMultiplicity { .. }
            | Error::InconsistentInput(_)
            | Error::NegativeGenus { .. }
            | Error::Io(_) => 2,
            Error::UnresolvedLocus(_)
            | Error::IrrationalCoefficients { .. }
            | Error::TruncationInsufficient { .. }
            | Error::BoundTooSmall { .. } => 3,
            Error::UnclassifiedPoint { .. }
            | Error::ExteriorUnderPolar { .. }
            | Error::NonPolarComplement => 4,
            Error::UnsupportedGenus(_) | Error::MissingNormalization { .. } => 5,
            Error::GridUnderflow(_) => 6,
        }
    }
}

impl From<AlgebraError> for Error {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::TruncationInsufficient { order } => {
                Error::TruncationInsufficient { order }
            }
            other => Error::InconsistentInput(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
