mod args;
mod commands;
mod output;

use clap::error::ErrorKind;
use clap::Parser;
use std::fmt;
use std::path::Path;
use std::process::ExitCode;

use args::Cli;

/// Reasons a command stops, mapped to exit codes 1, 2 and 3.
#[derive(Debug)]
pub enum Failure {
    Validation(String),
    CapReached(String),
    Io(String),
}

impl Failure {
    pub fn io(path: &Path, err: std::io::Error) -> Self {
        Self::Io(format!("{}: {err}", path.display()))
    }

    fn code(&self) -> u8 {
        match self {
            Self::Validation(_) => 1,
            Self::CapReached(_) => 2,
            Self::Io(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Validation(m) => write!(f, "error: {m}"),
            Self::CapReached(m) => write!(f, "cap reached: {m}"),
            Self::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<pwt_core::Error> for Failure {
    fn from(err: pwt_core::Error) -> Self {
        match err {
            pwt_core::Error::Io(e) => Self::Io(e.to_string()),
            other => Self::Validation(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(f.code())
        }
    }
}
