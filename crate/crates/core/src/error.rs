use num_complex::Complex64;
use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of the Gamma function at z = {0}")]
    GammaPole(f64),

    #[error("parameter pole: b = {0} is a non-positive integer")]
    ParameterPole(f64),

    #[error("value overflows the representable range")]
    Overflow,

    #[error("series did not converge: {0}")]
    NonConvergence(String),

    #[error("precondition violated: {0}")]
    Domain(String),

    #[error("invalid Hamiltonian: {0}")]
    InvalidHamiltonian(String),

    #[error("quadrature failed: {0}")]
    Quadrature(String),

    #[error("step size underflow at t = {t}: input is not integrable at this resolution")]
    StepUnderflow { t: f64 },

    #[error("Weyl disc radius {radius:e} still above tolerance at t = {t}")]
    DiscNotConverged {
        t: f64,
        center: Complex64,
        radius: f64,
    },

    #[error("Weyl coefficient is identically infinite (indivisible start of type 0)")]
    AtInfinity,

    #[error("Weyl disc never closed up to t = {t}; the limit is indeterminate")]
    Indeterminate { t: f64 },

    #[error("not a boundary case of the power family")]
    NotBoundary,

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("hypotheses violated: {0}")]
    Hypotheses(String),
}

pub type Result<T> = std::result::Result<T, Error>;
