use thiserror::Error;

/// Errors produced by the localization toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("sample count {got} does not match grid size {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("operation requires a non-periodic grid")]
    PeriodicGrid,

    #[error("operation requires a periodic (torus) grid")]
    NonPeriodicGrid,

    #[error("grids are not compatible: {0}")]
    IncompatibleGrids(String),

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("no closed-form Fourier transform for `{0}`")]
    FtUnavailable(String),

    #[error("no closed-form gradient for `{0}`")]
    GradientUnavailable(String),

    #[error("function has zero norm")]
    ZeroNorm,

    #[error("direction must be nonzero")]
    ZeroDirection,

    #[error("direction must have integer components on the torus")]
    NonIntegerDirection,

    #[error("vanishing commutator: |<A f, f>| = {modulus:e} is below {threshold:e}")]
    VanishingCommutator { modulus: f64, threshold: f64 },

    #[error("centering violated: alpha_L = {alpha:e}, beta_L = {beta:e}")]
    CenteringViolated { alpha: f64, beta: f64 },

    #[error("expansion tail {residual:e} exceeds tolerance {tolerance:e}")]
    TailToleranceExceeded { residual: f64, tolerance: f64 },

    #[error("periodization tail {tail:e} exceeds tolerance {tolerance:e}; increase K")]
    PeriodizationTail { tail: f64, tolerance: f64 },

    #[error("per-axis symmetry violated: {0}")]
    SymmetryViolation(String),

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
