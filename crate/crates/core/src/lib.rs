//! Exact symbolic engine for diagonal reduction algebras of `gl_n` and `sl_n`.

pub mod center;
pub mod coeff;
pub mod error;
pub mod expr;
pub mod jtensor;
pub mod lattice;
pub mod pbw;
pub mod render;
pub mod symmetries;
pub mod table;
pub mod zalg;

pub use error::{Error, Result};
