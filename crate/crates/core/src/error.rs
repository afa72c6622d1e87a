use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegionError {
    #[error("region is unbounded in the requested direction")]
    Unbounded,
    #[error("region is empty")]
    Empty,
    #[error("weights must be nonnegative and not both zero")]
    InvalidWeights,
    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("gain {gain} exceeds the signal length {q}")]
    InvalidGain { gain: usize, q: usize },
    #[error("signal length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
    #[error("scheme does not match channel parameters: {0}")]
    SchemeMismatch(String),
    #[error("block count must be at least 3, got {0}")]
    TooFewBlocks(usize),
    #[error("decoding ambiguity at receiver {receiver}: {unresolved} fresh bits could not be resolved")]
    DecodingAmbiguity { receiver: usize, unresolved: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaussianError {
    #[error("correlation rho = {0} outside [0, 1]")]
    RhoOutOfRange(String),
    #[error("SNR and INR must be positive, got snr = {snr}, inr = {inr}")]
    NonPositive { snr: String, inr: String },
    #[error("regime {0} has no feedback power split")]
    UnsupportedCase(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}
