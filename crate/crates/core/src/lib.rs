//! Exact computations on the Berkovich projective line over `Q_p` and certified
//! isotropy checks for diagonal quadratic forms over `Q_p(T)`.
//!
//! All numbers are exact rationals. p-adic quantities are rationals carried with a
//! working precision; completions are never materialized.

pub mod arith;
pub mod berkline;
pub mod cli;
pub mod discauto;
pub mod error;
pub mod isotropy;
pub mod models;

pub use error::{Error, Result};
