//! Batch front end for the `ghz-games` library: argument parsing, report
//! documents and their JSON/CSV rendering.

pub mod config;
pub mod emit;
pub mod report;
pub mod run;

use ghz_games::ErrorKind;

pub use config::{Cli, Format, RunConfig};
pub use emit::{emit_report, render};
pub use run::dispatch;

pub const EXIT_IO: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_GUARD: u8 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ghz_games::Error),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot serialize report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot write CSV: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(e) => match e.kind() {
                ErrorKind::Malformed => EXIT_USAGE,
                ErrorKind::Precondition => EXIT_PRECONDITION,
                ErrorKind::Guard => EXIT_GUARD,
            },
            CliError::Io(_) | CliError::Json(_) | CliError::Csv(_) => EXIT_IO,
        }
    }

    /// Advice printed after the message, if any.
    pub fn hint(&self) -> Option<&'static str> {
        match self.exit_code() {
            EXIT_GUARD => {
                Some("raise --work-limit, --item-limit or --amplitude-limit, or pass --force")
            }
            _ => None,
        }
    }
}
