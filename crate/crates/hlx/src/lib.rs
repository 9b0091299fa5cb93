//! JSON formats, verification suites and the command-line front end for `hlx-core`.

pub mod cli;
pub mod config;
pub mod error;
pub mod field;
pub mod recipe;
pub mod report;
pub mod suites;

pub use config::RunConfig;
pub use error::{HlxError, Result};
