//! Binary constant-weight codes from translates of q-ary codes.
//!
//! A translate u + C of a code C with minimum distance d meets the Johnson
//! space J^n(w) in a binary constant-weight code of distance at least
//! 2⌊(d+1)/2⌋. This crate builds the source codes (BCH, first-order
//! Reed-Muller, generator-matrix files, explicit lists), searches their
//! translates exhaustively or by sampling, computes the exact averaging
//! lower bounds on A(n, d, w), extracts the resulting codes and verifies
//! them independently.

pub mod algebra;
pub mod codebook;
pub mod error;
pub mod propagate;
pub mod tables;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
