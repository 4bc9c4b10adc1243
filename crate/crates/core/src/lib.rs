//! Permutation pentanomials of the form `X^r B(X^(q-1))` over F_{q^2}.
//!
//! The crate constructs the two pentanomial families for every prime
//! `p != 3`, checks their coefficient structure, and decides the
//! permutation property three ways: by the closed-form gcd criterion, by
//! reduction to the roots of unity of order `q+1`, and by exhaustive
//! evaluation.

pub mod arith;
pub mod error;
pub mod field;
pub mod pentanomial;
pub mod verify;

pub use error::{Error, Result};
