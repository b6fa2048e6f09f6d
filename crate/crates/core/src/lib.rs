//! Exact diagonalization and entanglement analysis for permutation-symmetric
//! spin-1/2 systems, centered on the Lipkin-Meshkov-Glick (LMG) model.

pub mod analysis;
pub mod classical;
pub mod cli;
pub mod eigensolve;
pub mod entangle;
pub mod error;
pub mod lmg;
pub mod symspace;

pub use error::{Result, SpinError};
