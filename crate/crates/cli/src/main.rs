use std::process::ExitCode;

use clap::Parser;
use freefield_cli::commands::exit;
use freefield_cli::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE as u8 } else { exit::OK as u8 });
        }
    };
    let result = run(&cli).and_then(|emission| {
        let body = emission.render(cli.format)?;
        match &cli.out {
            Some(path) => std::fs::write(path, body).map_err(CliError::Io)?,
            None => print!("{body}"),
        }
        Ok(emission.code)
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
