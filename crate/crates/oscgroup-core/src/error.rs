use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("parameter `{0}` declared twice")]
    DuplicateParameter(String),
    #[error("`{0}` is not a valid parameter name")]
    BadName(String),
    #[error("parameter `s` needs both `x` and `z` in the ring")]
    RootWithoutFactors,
    #[error("no value or declaration for parameter `{0}`")]
    UnboundParameter(String),
    #[error("assignment violates s^2 = x*z")]
    InconsistentRoot,
    #[error("assignment violates the product constraint of derived parameter `{0}`")]
    InconsistentDerived(String),
    #[error("reduction rule for `{0}` overlaps an existing rule")]
    OverlappingReduction(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("no rewrite rule for the out-of-order pair {0}*{1}")]
    IncompleteRewriteSystem(&'static str, &'static str),
    #[error("rewrite rule {0}*{1} is not decreasing in the term order")]
    NonDecreasingRule(&'static str, &'static str),
    #[error("relation set cannot be oriented: pivot on `{0}` has non-constant coefficient")]
    NonConstantPivot(String),
    #[error("relation set forces a relation among normal words (leading word `{0}`)")]
    NormalWordRelation(String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualError {
    #[error("series truncated at order {order} but the element has degree {degree}")]
    TruncationTooSmall { order: usize, degree: usize },
    #[error("coproduct term {0} does not fit the expected expansion pattern")]
    PatternViolation(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("invalid realization: {0}")]
    InvalidRealization(String),
    #[error("invalid annihilator variant: {0}")]
    InvalidVariant(String),
    #[error("state amplitude too close to the truncation ({mass_outside:.3e} outside the safe band)")]
    TruncationRisk { mass_outside: f64 },
    #[error("numerical kernel has dimension {found}, expected {expected}")]
    UnexpectedKernel { found: usize, expected: usize },
    #[error("Fock space needs at least 8 bosonic levels, got {0}")]
    SpaceTooSmall(usize),
    #[error("eigenvalue computation did not converge")]
    NoConvergence,
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}
