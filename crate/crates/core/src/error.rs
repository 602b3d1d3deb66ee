use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid mass vector: {0}")]
    Simplex(String),

    #[error("measure has no atoms with positive mass")]
    EmptyMeasure,

    #[error("series too short: index {needed} requested but length is {len}")]
    IndexOutOfRange { needed: usize, len: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("division by zero: leading coefficient vanishes")]
    DivisionByZero,

    #[error("negative radicand {radicand:e}: coefficients do not come from a function with positive real part")]
    NotInClass { radicand: f64 },

    #[error("empty support intersection: {0}")]
    EmptyIntersection(String),

    #[error("arc mass {mass} lies outside [0, 1]")]
    MassFormula { mass: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
