//! Error types shared by the library modules.

use thiserror::Error;

/// Malformed textual input: bad coefficients, bad JSON shapes, wrong field.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed coefficient `{0}`")]
    Coefficient(String),
    #[error("coefficient `{0}` does not lie in the field `{1}`")]
    NotInField(String, &'static str),
    #[error("malformed payload: {0}")]
    Shape(String),
    #[error("invalid JSON: {0}")]
    Json(String),
}

/// Domain errors: inputs that are well formed but violate a precondition.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DomainError {
    #[error("undefined leading part of the zero polynomial")]
    ZeroLeadingPart,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("expected a linear form, got `{0}`")]
    NotLinear(String),
    #[error("quadruple does not preserve the quadric: f1*f4 - f2*f3 = {0}")]
    QuadricViolated(String),
    #[error("linear forms are not totally isotropic")]
    NotIsotropic,
    #[error("planes are not transverse")]
    NotTransverse,
    #[error("linear forms are linearly dependent")]
    Dependent,
    #[error("matrix has determinant {0}, expected 1")]
    BadDeterminant(String),
    #[error("matrix is not orthogonal for the quadric")]
    NotOrthogonal,
    #[error("polynomial `{0}` is not in the allowed variables {1}")]
    WrongVariables(String, String),
    #[error("elementary polynomial has degree {0}, at least {1} required")]
    DegreeTooLow(usize, usize),
    #[error("pseudo-Jacobians jj_k all vanish: the pair is algebraically dependent with q{0}")]
    PseudoJacobiansVanish(String),
    #[error("group is not closed: {0}")]
    NotClosed(String),
    #[error("element is outside the required subgroup: {0}")]
    NotInSubgroup(String),
    #[error("not resonant: {0}")]
    NotResonant(String),
    #[error("the coefficient field lacks a required root of unity: {0}")]
    MissingRootOfUnity(String),
    #[error("grid construction rejected: {0}")]
    GridRejected(String),
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("normal form peeling failed: {0}")]
    PeelingFailed(String),
}
