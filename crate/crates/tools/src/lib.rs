//! File formats and command implementations for the `ospring` tool.

pub mod cli;
pub mod constants;
pub mod error;
pub mod fold;
pub mod measurements;
pub mod svg;

pub use error::{CliError, Result};
