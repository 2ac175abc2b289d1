// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |m - m†| = {deviation:e}")]
    NonHermitianInput { deviation: f64 },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("size mismatch: expected {expected}, got {rows}x{cols}")]
    SizeMismatch {
        expected: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("state is not Hermitian: max |ρ - ρ†| = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("state trace is not one: tr ρ = {trace}")]
    TraceNotOne { trace: f64 },

    #[error("state is not positive semidefinite: minimum eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("state is not X-shaped; offending entries (row, col, |value|): {entries:?}")]
    NotXShaped { entries: Vec<(usize, usize, f64)> },

    #[error("invalid X-state parameters: {reason}")]
    InvalidXState { reason: String },

    #[error("time must be non-negative, got {t}")]
    InvalidTime { t: f64 },

    #[error("integrator step {dt} exceeds the limit {limit} = 0.1/γ₀")]
    StepTooLarge { dt: f64, limit: f64 },

    #[error("parameter {name} = {value} out of range: {bound}")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        bound: String,
    },

    #[error("bisection bracket [{lo}, {hi}] does not bracket a sign change")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("unknown figure {0}; expected 1..=6")]
    UnknownFigure(u32),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
