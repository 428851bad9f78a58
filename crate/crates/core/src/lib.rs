//! Exact construction and certification of the algebraic data behind the
//! solvmanifolds `X = Gamma \ G` built from totally real fields with a
//! primitive reciprocal unit.

pub mod arith;
pub mod error;
pub mod field;
pub mod lie;
pub mod nilpotent;
pub mod report;
pub mod solvable;
pub mod topology;

pub use error::{Error, Result};
