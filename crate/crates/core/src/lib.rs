//! Real-valued compact optimizers (cDE-light, rcGA, cPSO, cBFO) with
//! re-sampled inheritance and random restarts, a shifted/rotated benchmark
//! suite, Holm-Bonferroni ranking and a seeded experiment harness.

// `!(x > 0.0)` style checks are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod engines;
mod error;
pub mod harness;
pub mod model;
pub mod restart;
pub mod rng;
pub mod special;
pub mod stats;

pub use error::{Error, Result};
pub use rng::RandomSource;
