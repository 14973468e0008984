//! Command-line front end for `z2covers`: cover-spec files, JSON, CSV and
//! Markdown output, seeded geography sampling and parallel classification.
//!
//! Exit codes: 0 on success, 1 when well-formed input fails validation,
//! 2 on malformed input.  Output is fully determined by the arguments and
//! seeds; the worker count only changes how fast it is produced.

pub mod cli;
pub mod commands;
pub mod error;
pub mod io;
pub mod output;
pub mod sample;
pub mod selftest;

pub use cli::Cli;
pub use commands::{run, Outcome, Status};
pub use error::CliError;

/// Exit code for malformed input.
pub const EXIT_MALFORMED: i32 = 2;

/// Runs a parsed command line on a worker pool of the requested size.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Malformed(String::from("--threads must be positive")));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::ThreadPool(e.to_string()))?;
    pool.install(|| run(&cli.command))
}
