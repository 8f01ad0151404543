use thiserror::Error;

/// Errors raised by the analysis library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("time scale is invalid: {0}")]
    InvalidTimeScale(String),

    #[error("point {0} is not a member of the time scale")]
    PointNotInScale(f64),

    #[error("window [{t0}, {t1}) is empty")]
    EmptyWindow { t0: f64, t1: f64 },

    #[error("backward exponential requested: t = {t} < t0 = {t0}")]
    BackwardWindow { t: f64, t0: f64 },

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("negative horizon {0}")]
    NegativeHorizon(f64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    Singular,

    #[error("control or state does not match the system: {0}")]
    DomainMismatch(String),

    #[error("state became non-finite at t = {0}")]
    NonFiniteState(f64),

    #[error("system is not positive: {0}")]
    NotPositiveSystem(String),

    #[error("window has fewer than {needed} elements")]
    WindowTooSmall { needed: usize },

    #[error("Gram specification leaves the window: {0}")]
    SpecOutsideWindow(String),

    #[error("column selection M is empty")]
    EmptyM,

    #[error("Gram matrix is not monomial")]
    NotMonomialGram,

    #[error("target state has a negative entry")]
    NegativeTarget,

    #[error("operation requires a {expected} time scale")]
    WrongScaleTag { expected: &'static str },

    #[error("window contains the right-dense point {0}")]
    DenseWindow(f64),

    #[error("certificate check failed: {0}")]
    CertificateCheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
