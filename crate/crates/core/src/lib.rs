//! Exact twisted semi-derived Hall algebras of iquivers over small prime
//! fields, and verification of the iquantum group relations they realize.

pub mod cli;
pub mod error;
pub mod frep;
pub mod idp;
pub mod ihall;
pub mod iqg;
pub mod iquiver;
pub mod ring;

pub use error::{Error, Result};
