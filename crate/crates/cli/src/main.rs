//! `extensia`: check, solve and query extensional higher-order logic
//! programs with negation.

mod app;
mod args;
mod exit;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::Cli;
use crate::exit::Status;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Status::Ok.into(),
                _ => Status::Usage.into(),
            };
        }
    };
    match app::run(cli.command) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return Status::Internal.into();
            }
            Status::Ok.into()
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.status.into()
        }
    }
}
