//! Sequence-level checks: aperiodic autocorrelation, the exact Golay-set
//! test, oversampled PMEPR, generalized Boolean functions and the
//! paraunitary identity of a polynomial matrix.

mod anf;
mod golay;
mod paraunitary;
mod pmepr;
mod sequence;

pub use anf::{anf, degree, GeneralizedBooleanFunction};
pub use golay::{extract_sets, golay_check, GolaySet, SetFamily};
pub use paraunitary::{paraunitary_check, paraunitary_defect, paraunitary_product_entry, ParaunitaryDefect};
pub use pmepr::{pmepr, PmeprMeasurement, DEFAULT_OVERSAMPLE, MIN_OVERSAMPLE};
pub use sequence::{autocorrelation, format_sequences_text, parse_sequences_text, shift_sum_defect, QarySequence};

use thiserror::Error;

use crate::cyclotomic::CyclotomicError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
    #[error("sequences use different alphabets: q = {0} and q = {1}")]
    MixedAlphabets(u32, u32),
    #[error("sequences have different lengths: {0} and {1}")]
    MixedLengths(usize, usize),
    #[error("empty sequence family")]
    EmptySet,
    #[error("not complementary: autocorrelation sum at shift {shift} is {value}")]
    NotComplementary { shift: usize, value: String },
    #[error("shift {u} out of range for length {len}")]
    ShiftOutOfRange { u: usize, len: usize },
    #[error("oversampling factor {0} too small (need at least {MIN_OVERSAMPLE})")]
    OversampleTooSmall(usize),
    #[error("length {0} is not a power of 2")]
    LengthNotPowerOfTwo(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
}

pub type Result<T> = std::result::Result<T, AnalysisError>;
