//! Command-line front end for the `polyquad` library.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;

use clap::Parser;

use args::{Cli, Command};
use commands::Outcome;
use error::CliError;

const THREADS_VAR: &str = "POLYQUAD_THREADS";

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::input(THREADS_VAR, format!("expected a positive integer, got {value:?}")))?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    configure_threads()?;
    match &cli.command {
        Command::Integrate(a) => commands::cmd_integrate(a),
        Command::Convergence(a) => commands::cmd_convergence(a),
        Command::Pick(a) => commands::cmd_pick(a),
        Command::LemmaSum(a) => commands::cmd_lemma_sum(a),
        Command::AppendixExample => commands::cmd_appendix_example(),
        Command::Bernoulli(a) => commands::cmd_bernoulli(a),
    }
}

/// Runs the CLI on `argv` and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => {
            let text = outcome.report.render(cli.format);
            if let Err(e) = output::emit(&text, cli.out.as_deref()) {
                eprintln!("error: --out: {e}");
                return 2;
            }
            match outcome.violation {
                Some(msg) => {
                    eprintln!("error: {msg}");
                    3
                }
                None => 0,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
