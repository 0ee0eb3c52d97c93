use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use fpforge_cli::commands::{run, Cli, Command};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(resp) => {
            let written = match (&cli.output, &cli.command) {
                (Some(path), c) if !matches!(c, Command::Verify(_)) => std::fs::write(path, &resp.text),
                _ => std::io::stdout().write_all(resp.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(resp.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
