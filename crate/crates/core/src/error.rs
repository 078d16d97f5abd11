use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown register `{0}`")]
    UnknownRegister(String),

    #[error("register `{0}` already exists")]
    DuplicateRegister(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("zero vector")]
    ZeroVector,

    #[error("post-selection impossible: success probability {0:e}")]
    PostSelectionImpossible(f64),

    #[error("density has zero total mass")]
    ZeroMass,

    #[error("density reported negative mass {mass:e} on [{lo}, {hi})")]
    NegativeMass { lo: f64, hi: f64, mass: f64 },

    #[error("outside approximation regime: beta*P = {0} < 1, use the exact scheme")]
    OutsideApproximationRegime(f64),

    #[error("plan mismatch: {0}")]
    PlanMismatch(String),

    #[error("degenerate covariance; reduce dimension")]
    DegenerateCovariance,

    #[error("grid too small: {0}")]
    GridTooSmall(String),

    #[error("trigonometric Gaussian constants insufficient after {0} doublings")]
    ConstantsInsufficient(u32),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
