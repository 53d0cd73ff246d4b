//! Finite-field and p-adic hypergeometric functions, with a registry of numerical checks.

pub mod arith;
pub mod charsum;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod padic;
pub mod qseries;
pub mod varieties;
pub mod verify;

pub use error::{Error, Result};
