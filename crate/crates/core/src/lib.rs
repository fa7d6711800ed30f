//! Exact construction and certification of the two Lie models of the
//! interval: the inductive one, built degree by degree, and the geometric
//! one, written with Bernoulli coefficients.

pub mod arith;
pub mod derivation;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod models;
pub mod sequences;
pub mod tensor;
pub mod verify;

pub use arith::Rational;
pub use error::{Error, Result};
