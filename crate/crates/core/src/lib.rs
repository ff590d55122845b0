//! Exact symbolic engine for delta-type currents on simplicial complexes.
//!
//! The crate computes distributional de Rham cohomology by retracting closed
//! currents onto the image of the chain map `E: Σ c_j S_j ↦ Σ c_j D(S_j)` and
//! cross-checks the result against Smith-normal-form simplicial homology.

pub mod algebra;
pub mod bridge;
pub mod current;
pub mod error;
pub mod pairing;
pub mod random;
pub mod simplicial;
pub mod solvers;
pub mod text;

pub use error::{Error, Result};
