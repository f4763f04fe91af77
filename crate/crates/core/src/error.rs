use thiserror::Error;

/// Errors raised by evaluation, bound construction and verification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {z} exceeds the overflow cap {cap}")]
    Overflow { z: f64, cap: f64 },

    #[error("series did not converge within {terms} terms at z = {z}")]
    NonConvergence { z: f64, terms: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("order {m} outside the supported range {min}..={max}")]
    OrderOutOfRange { m: u32, min: u32, max: u32 },

    #[error("quadrature tolerance {tol} not met (estimated error {estimate})")]
    ToleranceNotMet { tol: f64, estimate: f64 },

    #[error("unknown inequality case `{0}`")]
    UnknownCase(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
