//! Exact-arithmetic audit of `x^2 + (2k-1)^y = k^z` for `4 | k` with `2k - 1`
//! an odd prime power.

pub mod antipell;
pub mod arith;
pub mod error;
pub mod frey;
pub mod mordell;
pub mod pell;
pub mod pipeline;
pub mod qform;
mod serde_big;

pub use error::{Error, Result};
