//! Polycyclic presentations, lower central series and nilpotent-genus certificates.

pub mod arith;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod genus;
pub mod nilpotent;
pub mod pcgroup;
pub mod report;

pub use error::{Error, Result};
