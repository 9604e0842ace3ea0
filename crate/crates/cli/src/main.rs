//! `isosat`: generate, solve, benchmark and verify.

mod bench;
mod gen;
mod run;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "isosat", version, about = "CDCL solving with E-clauses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a benchmark instance with its metadata sidecar.
    Gen(gen::GenArgs),
    /// Solve one CNF. Exit code 10 = SAT, 20 = UNSAT, 0 = timeout.
    Solve(run::SolveArgs),
    /// Run a manifest of configurations over instances.
    Bench(bench::BenchArgs),
    /// Check a model or a list of clauses against a CNF.
    Verify(verify::VerifyArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen::run(a).map(|()| 0),
        Command::Solve(a) => run::run(a),
        Command::Bench(a) => bench::run(a).map(|()| 0),
        Command::Verify(a) => verify::run(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
