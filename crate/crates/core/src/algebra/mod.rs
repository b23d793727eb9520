//! Exact arithmetic and integer linear algebra.

pub mod field;
pub mod scalar;
pub mod snf;

pub use scalar::{Int, Rat, Ring};
