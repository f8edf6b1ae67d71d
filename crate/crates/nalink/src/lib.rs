//! File formats and the `nalink` command line.

pub mod cli;
pub mod format;
pub mod input;

pub use cli::{run, Exit};
