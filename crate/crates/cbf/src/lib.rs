//! File formats, report rendering and the command-line front end for
//! `cbf-core`.

pub mod cli;
pub mod codefile;
mod error;
pub mod render;

pub use error::{exit, CliError, Result};
