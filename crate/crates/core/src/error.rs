use thiserror::Error;

/// Errors raised by the library. Variants name the violated precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series has zero linear term")]
    ZeroLinearTerm,
    #[error("series has nonzero constant term")]
    ConstantTermNonzero,
    #[error("denominator factor has a root at the origin")]
    PoleAtOrigin,
    #[error("empty root list")]
    EmptyRoots,
    #[error("polynomial is not even (odd coefficient e_{0} is nonzero)")]
    NonEvenInput(usize),
    #[error("dilation scale is zero")]
    ZeroScale,
    #[error("degree {0} is odd")]
    OddDegree(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("rectangular parameter {0} lies in the excluded set {{-1,...,-{1}}}")]
    ForbiddenAlpha(String, usize),
    #[error("divisor coefficient e_{0} is zero")]
    ZeroCoefficientDivisor(usize),
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),
    #[error("lower parameter {value} is excluded for degree {degree}")]
    InvalidLowerParameter { value: String, degree: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("measure is not symmetric (odd moment m_{0} is nonzero)")]
    NonSymmetricInput(usize),
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("degree {degree} exceeds cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("at least one trial is required")]
    ZeroTrials,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
