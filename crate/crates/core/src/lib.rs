//! Homotopy transfer of sh-Lie (L∞) structures over exact rationals.

pub mod error;
pub mod canonical;
pub mod cli;
pub mod complexes;
pub mod exactalg;
pub mod freelie;
pub mod loopalg;
pub mod oracle;
pub mod symcoalg;
pub mod transfer;

pub use error::{Error, Result};
