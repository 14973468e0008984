use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use z2covers_cli::{execute, Cli, EXIT_MALFORMED};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            let _ = stdout.flush();
            if !outcome.stderr.is_empty() {
                eprint!("{}", outcome.stderr);
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_MALFORMED as u8)
        }
    }
}
