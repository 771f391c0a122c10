//! File formats, statistics, reports and the command-line driver around
//! `indefinite-core`.

pub mod cli;
pub mod error;
pub mod formats;
pub mod report;
pub mod stats;
pub mod stream_io;
pub mod verify;

pub use cli::run;
pub use error::{CliError, CliResult};
