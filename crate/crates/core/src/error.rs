use thiserror::Error;

use crate::scalar::ScalarKind;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is singular")]
    Singular,

    #[error("division by zero")]
    DivisionByZero,

    #[error("scalar kind mismatch: {left:?} vs {right:?}")]
    KindMismatch { left: ScalarKind, right: ScalarKind },

    #[error("star mode {0} is not available for this scalar kind")]
    InvalidStarMode(&'static str),

    #[error("letter index x{index} out of range for a {d}-tuple")]
    IndexOutOfRange { index: usize, d: usize },

    #[error("enumeration budget exceeded: {required} raw words > budget {budget}")]
    EnumerationBudget { required: u128, budget: u128 },

    #[error("grid budget exceeded: {required} grid points > budget {budget}")]
    GridBudget { required: u128, budget: u128 },

    #[error("matrix is not symmetric/hermitian (deviation {deviation:e})")]
    NotSymmetric { deviation: f64 },

    #[error("jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("orthogonal witness construction needs the conjugate transpose for complex matrices")]
    UnsupportedStarMode,

    #[error("witness failed verification: {0}")]
    WitnessVerification(String),

    #[error("coefficient ({i},{j}) does not commute with the unit system")]
    NonCentralCoefficient { i: usize, j: usize },

    #[error("expected N^2 unit matrices, got {0}")]
    NotASquareFamily(usize),

    #[error("generating set does not contain the standard matrix units")]
    MissingStandardUnits,

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
