mod args;
mod check;
mod commands;
mod config;
mod error;
mod plot;

use args::{Cli, Command};
use clap::Parser;
use error::CliError;
use std::io::Write;
use std::process::ExitCode;

fn finish(results: Vec<Result<String, CliError>>) -> Result<(), CliError> {
    let mut stdout = std::io::stdout().lock();
    let mut worst = 0;
    for r in results {
        match r {
            Ok(text) => {
                let _ = stdout.write_all(text.as_bytes());
            }
            Err(e) => {
                eprintln!("qcollapse: {e}");
                worst = worst.max(e.exit_code());
            }
        }
    }
    match worst {
        0 => Ok(()),
        code => Err(CliError::Reported(code)),
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Params(a) => finish(commands::params(&a)?),
        Command::Profile(a) => finish(commands::profile(&a)?),
        Command::Observables(a) => finish(commands::observables(&a)?),
        Command::Evolve(a) => finish(commands::evolve(&a)?),
        Command::Fit(a) => finish(vec![commands::fit(&a)]),
        Command::Plot(a) => finish(vec![plot::plot(&a)]),
        Command::Check(a) => {
            let rows = check::rows(&a)?;
            print!("{}", check::table(&rows));
            let failed = rows.iter().filter(|r| !r.pass()).count();
            if failed > 0 {
                return Err(CliError::Numerical(format!("{failed} checks failed")));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Reported(_)) {
                eprintln!("qcollapse: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
