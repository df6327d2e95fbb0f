//! Configuration, command dispatch and report emission for the `boxspec`
//! binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod verify;

pub use commands::{run_command, Command, Options, Outcome};
pub use config::{parse_config, parse_config_with, Format, JobConfig};
pub use error::{CliError, EXIT_OK, EXIT_UNAVAILABLE, EXIT_USAGE, EXIT_VERIFY};
pub use verify::{run_suite, Check, Suite, DEFAULT_SEED};
