//! Finite-dimensional pre-Riesz spaces modelled as polyhedral cones in `ℝⁿ`.
//!
//! The crate builds the canonical vector lattice cover of a model (the
//! functional representation by the extreme rays of the dual cone) and
//! decides, with independently checkable certificates, whether the space is
//! pervasive, weakly pervasive, fordable, has the Riesz decomposition
//! property or satisfies property (P). All arithmetic is exact.

pub mod cover;
pub mod deciders;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod order;
pub mod zoo;

pub use error::{Error, Result};
