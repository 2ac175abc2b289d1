// SPDX-License-Identifier: Apache-2.0

//! Hilbert–Schmidt and trace-norm geometric discord of two-qubit states, and
//! their evolution when one atom of the pair decays by spontaneous emission.
//!
//! Basis order is |ee⟩, |eg⟩, |ge⟩, |gg⟩ with atom A the first factor.
//! Measurements are always on atom A.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod families;
pub mod linalg;
pub mod measures;
pub mod qstate;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, Subsystem, C64};
pub use qstate::{DensityMatrix, XState};
