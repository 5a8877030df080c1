//! Exact computations with the standard t-structure on bounded chain complexes of
//! free modules over `Z` and `F_p`, towers of such complexes, and the
//! Atiyah-Hirzebruch spectral sequence built from truncation towers.

pub mod error;
pub mod ahss;
pub mod chain;
pub mod cli;
pub mod exactalg;
pub mod pro;
pub mod prohomotopy;
pub mod tstruct;

pub use error::{Error, Result};
