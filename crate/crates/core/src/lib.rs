pub mod analysis;
pub mod cli;
pub mod combinatorics;
pub mod dynamics;
pub mod enumeration;
pub mod error;
pub mod qseries;

pub use error::{Error, Result};
