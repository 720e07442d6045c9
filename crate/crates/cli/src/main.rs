use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use vortmetric::{run, Cli, CliError};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    let result = run(cli, &mut lock).and_then(|()| lock.flush().map_err(CliError::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("vortmetric: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
