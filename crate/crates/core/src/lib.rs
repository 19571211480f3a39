//! Numerical toolkit for reverse Carleson measures on the unit disc.
//!
//! Angles are measured in turns throughout: `t ∈ [0, 1)` stands for the
//! boundary point `e^{2πit}`, and boundary Lebesgue measure `m` has total
//! mass one.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ball;
pub mod carleson;
pub mod corpus;
pub mod disc;
pub mod error;
pub mod funcs;
pub mod measures;
pub mod quad;
pub mod report;
pub mod spaces;
pub mod verify;

pub use error::{Error, Result};
