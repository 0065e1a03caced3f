use thiserror::Error;

/// Everything that can go wrong across the crate.
///
/// Numerical routines return honest error bounds wherever possible and only
/// fail when a contract is violated (bad input, unusable bracket, a bound that
/// cannot meet the requested tolerance, or a corrupt cache file).
#[derive(Debug, Error)]
pub enum Error {
    #[error("zeta has a pole at s = 1")]
    PoleAtOne,

    #[error("height |t| = {t} exceeds the supported evaluation cap {cap}")]
    HeightCap { t: f64, cap: f64 },

    #[error("chi(s) is singular at s = {sigma} + {t}i")]
    ChiSingular { sigma: f64, t: f64 },

    #[error("finite-difference step too small: cancellation noise {noise:.3e} exceeds budget {budget:.3e}")]
    StepTooSmall { noise: f64, budget: f64 },

    #[error("cannot keep argument increments below pi/2 near t = {t} (step {step:.3e})")]
    BranchAmbiguity { t: f64, step: f64 },

    #[error("bracket lost while refining near t = {t}: Z evaluation noise exceeds tolerance")]
    LossOfBracket { t: f64 },

    #[error("zero count verification failed on [{lo}, {hi}]: {detail}")]
    VerificationFailed { lo: f64, hi: f64, detail: String },

    #[error("T = {t} exceeds table height {height}")]
    HeightExceeded { t: f64, height: f64 },

    #[error("corrupt zero table: {0}")]
    CorruptFile(String),

    #[error("zero table version {found} unsupported (expected {expected})")]
    VersionMismatch { found: u32, expected: u32 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("tail remainder bound {bound:.3e} exceeds requested tolerance {tol:.3e}; a taller zero table is needed")]
    TailDominates { bound: f64, tol: f64 },

    #[error("remainder bound {bound:.3e} too large for the requested computation")]
    RemainderTooLarge { bound: f64 },

    #[error("Laurent expansion of order {have} cannot serve a request needing order {need}")]
    InsufficientLaurentOrder { have: i32, need: i32 },

    #[error("zero table of height {height} too short: need height ≥ {needed:.1}")]
    TableTooShort { needed: f64, height: f64 },

    #[error("alpha = {alpha} outside the admissible range |alpha| ≤ {limit:.4}")]
    AlphaOutOfRange { alpha: f64, limit: f64 },

    #[error("computation budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("adaptive quadrature exceeded max depth on [{lo}, {hi}] (err estimate {err:.3e})")]
    MaxDepthExceeded { lo: f64, hi: f64, err: f64 },

    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
