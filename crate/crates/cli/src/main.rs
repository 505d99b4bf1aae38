use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gasdyn_cli::{runner, CliError, Overrides, Settings, Verb};

#[derive(Debug, Parser)]
#[command(name = "gasdyn", version, about = "Shock-capturing solvers for the Euler equations of gas dynamics")]
struct Cli {
    #[command(subcommand)]
    verb: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one problem and write snapshots, report.csv and summary.txt.
    Run(Overrides),
    /// Fit convergence orders over a list of resolutions (orders.csv).
    Convergence(Overrides),
    /// Run several schemes on one problem and tabulate them (compare.csv).
    Compare(Overrides),
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let (verb, flags) = match cli.verb {
        Command::Run(f) => (Verb::Run, f),
        Command::Convergence(f) => (Verb::Convergence, f),
        Command::Compare(f) => (Verb::Compare, f),
    };
    let settings = Settings::resolve(verb, &flags)?;
    match verb {
        Verb::Run => {
            for case in runner::run(&settings)? {
                println!("{}", case.dir.display());
            }
        }
        Verb::Convergence => {
            for row in runner::convergence(&settings)? {
                println!("{}: order {:.3}", row.scheme, row.fit.order);
            }
        }
        Verb::Compare => {
            for row in runner::compare(&settings)? {
                let status = match &row.outcome {
                    Ok(_) => "ok".to_string(),
                    Err(msg) => format!("aborted ({msg})"),
                };
                println!("{} {}: {status}", row.scheme, row.cells);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
