//! Online Gaussian elimination over GF(2) and a union–find style decoder
//! for CSS codes that uses it.
//!
//! * [`gf2`]: packed bit vectors and matrices, batch LUP decomposition and
//!   the online update that appends rows and columns to an existing
//!   factorisation.
//! * [`codes`]: periodic 2D/3D toric codes and the 6.6.6 colour code.
//! * [`decoder`]: erasure growth with offline (re-eliminate every step) and
//!   online (incremental) validation.
//! * [`sim`]: seeded Monte Carlo shots and per-group aggregation. Shots run
//!   on rayon when the `parallel` feature (on by default) is enabled.

pub mod codes;
pub mod decoder;
pub mod error;
pub mod gf2;
pub mod sim;

pub use error::{Error, Result};
