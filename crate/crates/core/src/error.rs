//! Error types shared across the crate.

use thiserror::Error;

use crate::exact::Var;

/// Errors raised by the exact-algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("variable mismatch: expected {expected}, found {found}")]
    VariableMismatch { expected: Var, found: Var },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero field element")]
    ZeroInverse,
    #[error("antiderivative of {var}^-1 needs a logarithm")]
    LogarithmicTerm { var: Var },
    #[error("pole of order {order} at the expansion center")]
    PoleAtCenter { order: i64 },
    #[error("substitution by a constant map is degenerate")]
    ConstantSubstitution,
    #[error("evaluation at a pole of the denominator")]
    EvalAtPole,
    #[error("evaluation of a negative exponent at zero")]
    NegativeExponentAtZero,
    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,
    #[error("coefficient is not regular at {var} = 0")]
    FormalPole { var: Var },
    #[error("coefficient is not a polynomial in {var}")]
    NonPolynomialCoefficient { var: Var },
    #[error("function has odd-degree terms; not a function of {var}^2")]
    NotEven { var: Var },
    #[error("exponent overflow")]
    ExponentOverflow,
}

/// Errors raised by the geometric layers (profiles, residuals, limits).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("chart mismatch: expected variable {expected}, found {found}")]
    ChartMismatch { expected: Var, found: Var },
    #[error("chart {chart} needs sqrt(c) in the coefficient field")]
    ChartNeedsSqrt { chart: String },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("polynomial has {count} root(s) in (1, infinity)")]
    RootInInterval { count: usize },
    #[error("evaluation point out of range: {0}")]
    OutOfRange(String),
}
