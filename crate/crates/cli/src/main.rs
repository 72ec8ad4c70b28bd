mod args;
mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command};
use commands::{CliError, Outcome};

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Exact(a) => commands::exact(a),
        Command::Approx(a) => commands::approx(a),
        Command::CountMatchable(a) => commands::count_matchable(a),
        Command::VerifyReduction(a) => commands::verify_reduction(a),
        Command::Bench(a) => commands::bench(a, cli.timing),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(commands::EXIT_USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: cannot start thread pool: {e}");
            return ExitCode::from(commands::EXIT_USAGE);
        }
    }

    let start = Instant::now();
    let mut outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return ExitCode::from(e.code);
        }
    };
    let elapsed = start.elapsed().as_millis() as u64;
    if cli.timing {
        eprintln!("time: {elapsed} ms");
        outcome.report.timing_ms = Some(elapsed);
    }

    let text = if cli.json {
        let mut s = serde_json::to_string_pretty(&outcome.report).expect("report serializes");
        s.push('\n');
        s
    } else {
        outcome.text
    };
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(commands::EXIT_VERIFY);
    }
    ExitCode::from(outcome.code)
}
