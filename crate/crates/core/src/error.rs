use thiserror::Error;

use crate::report::CheckReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Clone, Debug, Error)]
pub enum Error {
    #[error("elements or maps belong to different algebras ({left} vs {right})")]
    AlgebraMismatch { left: String, right: String },
    #[error("{0} is not a prime below 2^31")]
    InvalidField(u32),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("structure constants are not commutative and associative")]
    InvalidStructureConstants(CheckReport),
    #[error("map is not multiplicative")]
    NotMultiplicative(CheckReport),
    #[error("not a valid action")]
    InvalidAction(CheckReport),
    #[error("axioms violated")]
    AxiomViolation(CheckReport),
    #[error("algebra {0} is not finite dimensional")]
    NotFiniteDimensional(String),
    #[error("domain algebra {0} is not free")]
    DomainNotFree(String),
    #[error("the given elements do not span an ideal: {0}")]
    NotAnIdeal(String),
    #[error("the kernel of the boundary is not stable: {0}")]
    KernelNotActionStable(String),
    #[error("source/target mismatch: {0}")]
    SourceTargetMismatch(String),
    #[error("invalid quadratic derivation")]
    InvalidDerivation(CheckReport),
    #[error("invalid quadratic 2-derivation")]
    InvalidTwoDerivation(CheckReport),
}

impl Error {
    /// The check report carried by validation failures, if any.
    pub fn report(&self) -> Option<&CheckReport> {
        match self {
            Error::InvalidStructureConstants(r)
            | Error::NotMultiplicative(r)
            | Error::InvalidAction(r)
            | Error::AxiomViolation(r)
            | Error::InvalidDerivation(r)
            | Error::InvalidTwoDerivation(r) => Some(r),
            _ => None,
        }
    }
}
