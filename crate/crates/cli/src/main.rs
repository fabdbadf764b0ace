use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use tgait::{run, tolerance_from_env, Cli};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = tolerance_from_env().and_then(|tol| run(&cli, tol));
    match result {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout.write_all(outcome.stdout.as_bytes()).and_then(|_| stdout.flush()) {
                eprintln!("error: writing output: {e}");
                return ExitCode::from(tgait::ExitKind::Io as u8);
            }
            if outcome.violations {
                eprintln!("error: schedule violates its synchronization constraints");
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code() as u8)
        }
    }
}
