use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use peforge_cli::Cli;

/// Exit codes: 0 when every check passes, 1 when a verification check
/// fails, 2 for usage or configuration errors.
fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match peforge_cli::run(cli) {
        Ok(outcome) => ExitCode::from(outcome.exit_code()),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
