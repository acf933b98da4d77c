use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("projection undefined at origin")]
    ZeroVector,
    #[error("linear form has all coefficients zero")]
    ZeroForm,
    #[error("identical lines")]
    IdenticalLines,
    #[error("expected at least {needed} items, got {got}")]
    TooFew { needed: usize, got: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("defining forms are linearly dependent")]
    DependentForms,
    #[error("hyperplanes not independent")]
    NotIndependent,
    #[error("not in general position: subset {subset:?} is dependent")]
    NotInGeneralPosition { subset: Vec<usize> },
    #[error("hyperplanes {first} and {second} coincide")]
    RepeatedHyperplane { first: usize, second: usize },
    #[error("curve has all components identically zero")]
    ZeroCurve,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
