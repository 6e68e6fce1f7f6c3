//! Finite Miquelian Möbius planes M(q) and their Steiner chains.

pub mod chains;
pub mod error;
pub mod gf;
pub mod oracle;
pub mod plane;
pub mod position;
pub mod record;
pub mod sweep;

pub use error::{Error, Result};
