use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("input must be irrational: {0}")]
    NotIrrational(String),
    #[error("precision exhausted after {steps} steps: {detail}")]
    PrecisionExhausted { steps: usize, detail: String },
    #[error("scan envelope exceeded: {0}")]
    EnvelopeExceeded(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singular basis")]
    SingularBasis,
    #[error("lattice is not unimodular (|det| = {0})")]
    NotUnimodular(f64),
    #[error("polynomial is not totally real: {0}")]
    NotTotallyReal(String),
    #[error("enumeration budget exceeded: estimated {estimated:.3e} > budget {budget:.3e}")]
    BudgetExceeded { estimated: f64, budget: f64 },
    #[error("tolerance {tol:e} too small for budget: estimated {estimated:.3e} dual points")]
    ToleranceTooSmall { tol: f64, estimated: f64 },
    #[error("witness rejected: {0}")]
    WitnessRejected(String),
    #[error("witness too small: {0}")]
    WitnessTooSmall(String),
}

pub type Result<T> = std::result::Result<T, Error>;
