//! Exact scalar, index and polynomial arithmetic.

pub mod index;
pub mod matrix;
pub mod poly;
pub mod rat;

pub use index::{wedge, FormIndex, MultiIndex};
pub use matrix::RatMatrix;
pub use poly::{monomial_simplex_integral, poly_affine_substitute, Affine, Poly};
pub use rat::Rat;
