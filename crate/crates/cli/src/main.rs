use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use hulthen_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            e.exit()
        }
        Err(e) => return fail(&CliError::usage(e.to_string())),
    };
    let output = match run(&cli) {
        Ok(text) => text,
        Err(e) => return fail(&e),
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, output.as_bytes()),
        None => std::io::stdout().lock().write_all(output.as_bytes()),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&CliError {
            kind: "io".into(),
            message: e.to_string(),
            exit_code: 1,
        }),
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.to_line());
    ExitCode::from(e.exit_code as u8)
}
