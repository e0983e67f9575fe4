//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("twice_m = {twice_m} is not in the spectrum of spin twice_s = {twice_s}")]
    OutsideSpectrum { twice_m: i32, twice_s: u32 },

    #[error("spin quantum number must be non-negative, got twice_s = {0}")]
    NegativeSpin(i64),

    #[error("spin twice_s = {twice_s} exceeds the supported bound twice_s = {max_twice_s}")]
    SpinTooLarge { twice_s: u32, max_twice_s: u32 },

    #[error("state vector is not normalized: Σ|amplitude|² = {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("state vector contains a non-finite amplitude")]
    NonFiniteAmplitude,

    #[error("outcome twice_m = {twice_m} has probability {probability:e}, below the impossible-outcome threshold")]
    ImpossibleOutcome { twice_m: i32, probability: f64 },

    #[error("measurement sequence has no axes")]
    EmptySequence,

    #[error("shots must be at least 1")]
    ZeroShots,

    #[error("condition step {step} is out of range for a sequence of {len} axes")]
    ConditionStepOutOfRange { step: usize, len: usize },

    #[error("scan bound must be at least twice_s = 1")]
    EmptyScan,

    #[error("chi-square degrees of freedom {0} outside the tabulated range 1..=10")]
    DegreesOfFreedomOutOfRange(usize),

    #[error("expected probabilities sum to {0}, not 1")]
    ExpectedNotNormalized(f64),

    #[error("observed and expected bin counts differ: {observed} vs {expected}")]
    BinCountMismatch { observed: usize, expected: usize },

    #[error("exact rational arithmetic overflowed 64-bit integers")]
    ExactOverflow,

    #[error("sequence statistics are not mergeable: {0}")]
    IncompatibleStats(String),
}
