//! High-precision evaluation of central-binomial harmonic series, Clausen
//! functions, and the identities that connect them.

pub mod clausen;
pub mod error;
pub mod identities;
pub mod numerics;
pub mod pslq;
pub mod sequences;
pub mod series;

pub use error::{Error, Result};
pub use rug;
