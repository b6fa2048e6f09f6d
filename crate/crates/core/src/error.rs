use thiserror::Error;

pub type Result<T> = std::result::Result<T, SpinError>;

/// Errors raised by the numerical modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpinError {
    #[error("invalid system size: {0}")]
    InvalidSize(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized (sum of squared amplitudes = {norm_sq})")]
    Normalization { norm_sq: f64 },

    #[error("parity tag inconsistent with amplitudes: {0}")]
    ParityMismatch(String),

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("subsystem size p*N = {p} * {n} is not an integer")]
    NonIntegerSubsystem { n: usize, p: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("matrix is not symmetric (max deviation {max_deviation:e})")]
    Asymmetric { max_deviation: f64 },

    #[error("eigenvalue {index} did not converge within {sweeps} implicit-shift sweeps")]
    NonConvergence { index: usize, sweeps: usize },

    #[error("empty input")]
    EmptyInput,

    #[error("degenerate fit input: {0}")]
    DegenerateFit(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("point is off the unit sphere (|r|^2 = {norm_sq})")]
    OffSphere { norm_sq: f64 },

    #[error("parameters lie on a zone boundary: {0}")]
    Boundary(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("classical stability cross-check failed: {0}")]
    Consistency(String),
}
