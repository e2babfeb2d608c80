//! Crate-wide error type.

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}:{line}: cannot parse ordinate: {reason}")]
    ParseOrdinate {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("{path}:{line}: ordinate {value} violates strict ascending order")]
    NonMonotonic {
        path: PathBuf,
        line: usize,
        value: String,
    },

    #[error("ordinate at index {index} is not above 14, the height of the first zero")]
    OrdinateBelowFirstZero { index: usize },

    #[error("zero table is empty")]
    EmptyTable,

    #[error("table carries {observed} correct fractional digits, {required} required")]
    InsufficientDigits { observed: u32, required: u32 },

    #[error("cutoff {t} coincides with a tabulated ordinate within the table's precision")]
    CutoffOnOrdinate { t: String },

    #[error("cutoff {t} exceeds table coverage (last ordinate {last} plus one mean gap)")]
    CutoffBeyondCoverage { t: String, last: String },

    #[error("requested {requested} zeros, desk-scale generator cap is {cap}")]
    CountBeyondCap { requested: usize, cap: usize },

    #[error("requested count must be positive")]
    CountZero,

    #[error("requested {digits} fractional digits, generator budget is {budget}")]
    DigitsBeyondBudget { digits: u32, budget: u32 },

    #[error("zero scan near t = {near:.3} cannot isolate the expected roots (deficit {missing})")]
    MissedZeros { missing: usize, near: f64 },

    #[error("root polish did not converge")]
    NoConvergence,

    #[error("log power {n} exceeds the supported cap {cap}")]
    IndexBeyondCap { n: u32, cap: u32 },

    #[error("smooth counting function never reaches {target} on the search bracket")]
    NoBracket { target: String },

    #[error("s = 1 is the double pole of the expansion")]
    PoleAtOne,

    #[error("|s - 1| = {radius} is not inside the open convergence disk of radius 2")]
    OutsideDisk { radius: String },

    #[error("exponent s = {s} must exceed 1 for the direct series")]
    ExponentNotAboveOne { s: String },

    #[error("coefficient table is not contiguous through {requested}; largest contiguous index is {available}")]
    NonContiguousCoefficients { requested: u32, available: u32 },

    #[error("{path}:{line}: cannot parse coefficient entry: {reason}")]
    ParseCoefficient {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
