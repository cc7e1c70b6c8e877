use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tsra_cli::{list_catalog, run_scenario, Command, Report, RunOptions, ScenarioSource, EXIT_INPUT};

#[derive(Parser)]
#[command(name = "tsra", version, about = "Twisted group algebras and twisted symplectic reflection algebras")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Twisted character table on the regular classes.
    Characters(RunArgs),
    /// ψ-regular conjugacy classes with witnesses for the others.
    RegularClasses(RunArgs),
    /// Blocks over Rep(W), matched pairs (H,ζ) and α tables.
    Blocks(RunArgs),
    /// The transferred parameter c′ for every block.
    Transfer(RunArgs),
    /// Compares the central scalars of c and c′ on every simple.
    Verify(RunArgs),
    /// PBW check by overlap resolution.
    Pbw(RunArgs),
    /// Shipped constructors, cocycle families and bundled scenarios.
    Catalog {
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Scenario file, or the name of a bundled scenario.
    scenario: String,
    /// Write the report here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    jobs: Option<usize>,
    /// Include per-phase timings (reports are then no longer reproducible).
    #[arg(long)]
    timings: bool,
}

fn emit(report: &Report, out: Option<&PathBuf>) -> Result<(), String> {
    let text = report.to_json();
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let (command, args) = match cli.command {
        Cmd::Catalog { json } => {
            return match emit(&list_catalog(), json.as_ref()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(EXIT_INPUT as u8)
                }
            };
        }
        Cmd::Characters(a) => (Command::Characters, a),
        Cmd::RegularClasses(a) => (Command::RegularClasses, a),
        Cmd::Blocks(a) => (Command::Blocks, a),
        Cmd::Transfer(a) => (Command::Transfer, a),
        Cmd::Verify(a) => (Command::Verify, a),
        Cmd::Pbw(a) => (Command::Pbw, a),
    };
    let opts = RunOptions { seed: args.seed, tolerance: args.tolerance, jobs: args.jobs, timings: args.timings };
    let result = ScenarioSource::load(&args.scenario).and_then(|src| run_scenario(command, &src, &opts));
    match result {
        Ok(report) => {
            if let Err(e) = emit(&report, args.json.as_ref()) {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_INPUT as u8);
            }
            if !report.passed {
                eprintln!("verification failed: see the certificate in the report");
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
