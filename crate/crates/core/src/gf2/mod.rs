//! Exact linear algebra over GF(2).

mod bitvec;
mod lup;
mod matrix;

pub use bitvec::{BitVec, Ones};
pub use lup::{lup_decompose, GrowthBlock, LupState, OpCounters};
pub use matrix::BitMatrix;
