//! Exact general-position analysis of hyperplane arrangements in `C^3` and
//! verified entire curves avoiding them.
//!
//! Decisions (ranks, incidences, identities of exponential sums) are made in
//! exact rational arithmetic. Floating point is used only by [`verify`] when
//! an avoidance question cannot be settled symbolically.

pub mod arrangement;
pub mod cli;
pub mod curve;
pub mod diagonals;
pub mod error;
pub mod linalg;
pub mod projective;
pub mod scalar;
pub mod scene;
pub mod verify;
pub mod witness;

pub use error::{Error, Result};
