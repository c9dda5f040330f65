pub mod commands;
pub mod error;
pub mod report;
pub mod spec_file;

pub use commands::{execute, run_command, Cli};
pub use report::Report;
pub use spec_file::{load_spec, parse_spec, SpecFile};
