use std::fmt;

use crate::exactalg::Rational;

/// Why a constant-rank morphism failed to reach the standard form.
#[derive(Debug, Clone, PartialEq)]
pub enum Obstruction {
    /// A basis vector of the degree-2 kernel (coefficients on the target
    /// coordinates `x1..xn, y1..yk`) has no lift into the truncated kernel.
    KernelNotSurjective {
        witness: Vec<Rational>,
        label: String,
    },
    /// A normal-form component depends on coordinates outside the image
    /// subalgebra, so no correction term exists at this order.
    OutsideImage { component: String },
    /// The correction term for a formal coordinate has a part free of the
    /// formal variables, so subtracting it would not give a formal coordinate.
    NonFormalCorrection { component: String },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::KernelNotSurjective { label, .. } => {
                write!(
                    f,
                    "degree-2 kernel vector {label} has no truncated kernel lift"
                )
            }
            Obstruction::OutsideImage { component } => {
                write!(f, "component {component} is not in the image subalgebra")
            }
            Obstruction::NonFormalCorrection { component } => {
                write!(f, "correction for {component} is not in the formal ideal")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for {len} variables")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("substituted formal component {index} has a nonzero constant part")]
    FormalOrderViolation { index: usize },
    #[error("jets have different basepoints")]
    BasepointMismatch,
    #[error("argument {index} does not send the maximal ideal into the maximal ideal")]
    NotLocal { index: usize },
    #[error("no reliable coefficients left after differentiation")]
    PrecisionExhausted,
    #[error("ill-formed morphism: component {component}: {reason}")]
    IllFormedMorphism { component: String, reason: String },
    #[error("linear part is singular")]
    SingularDifferential,
    #[error("morphism does not have constant rank near the point: {0}")]
    NotConstantRank(String),
    #[error("not standardizable: {0}")]
    NotStandardizable(Box<Obstruction>),
    #[error("truncation order {order} is below the minimum {min}")]
    OrderTooSmall { order: usize, min: usize },
    #[error("morphism is not a regular submersion at the point")]
    NotRegularSubmersion,
    #[error("term of formal degree {found} in a degree-{expected} element")]
    GradeMismatch { expected: usize, found: usize },
    #[error("slice constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("point is not in the fiber: image {image} differs from {value}")]
    FiberMismatch { image: String, value: String },
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ArityMismatch { .. } => "ArityMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::FormalOrderViolation { .. } => "FormalOrderViolation",
            Error::BasepointMismatch => "BasepointMismatch",
            Error::NotLocal { .. } => "NotLocal",
            Error::PrecisionExhausted => "PrecisionExhausted",
            Error::IllFormedMorphism { .. } => "IllFormedMorphism",
            Error::SingularDifferential => "SingularDifferential",
            Error::NotConstantRank(_) => "NotConstantRank",
            Error::NotStandardizable(_) => "NotStandardizable",
            Error::OrderTooSmall { .. } => "OrderTooSmall",
            Error::NotRegularSubmersion => "NotRegularSubmersion",
            Error::GradeMismatch { .. } => "GradeMismatch",
            Error::ConstraintViolation(_) => "ConstraintViolation",
            Error::FiberMismatch { .. } => "FiberMismatch",
            Error::LimitExceeded(_) => "LimitExceeded",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
