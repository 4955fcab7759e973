//! Entanglement measures and monogamy bounds for generalized multiqubit
//! W-class states, with brute-force oracles for every closed form.

// `!(a < b)` comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod convexroof;
pub mod error;
pub mod lin;
pub mod measures;
pub mod monogamy;
pub mod verify;
pub mod wclass;

pub use error::{Error, Result};
