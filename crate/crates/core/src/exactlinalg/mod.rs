//! Exact linear algebra over small prime fields.
//!
//! Everything downstream (grid evaluation, syzygies, hom spaces) reduces to
//! row reduction of small dense matrices, so a single dense row-major
//! representation is used for every modulus.

mod field;
mod matrix;

pub use field::{PrimeField, MAX_MODULUS};
pub use matrix::{Matrix, Rref};
