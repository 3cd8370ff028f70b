use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use liefilt_cli::{load_problem, run, Command, Overrides};

#[derive(Parser)]
#[command(
    name = "liefilt",
    version,
    about = "Weightings and osculating algebras of singular Lie filtrations"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Write the JSON report to this path (`-` for stdout)
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<String>,

    /// Coefficient degree bound for membership solves
    #[arg(long, global = true)]
    degree_bound: Option<u32>,

    /// Number of flow-out samples
    #[arg(long, global = true)]
    samples: Option<usize>,

    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Suppress the text report
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Bracket compatibility and cleanness
    Check { file: String },
    /// Weight sequence
    Weights { file: String },
    /// Weighted coordinates
    Coords { file: String },
    /// Flow-out verification on jets
    Jets { file: String },
    /// Osculating algebras at the base point
    Osculate { file: String },
    /// All stages
    Report { file: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, file) = match &cli.command {
        Cmd::Check { file } => (Command::Check, file),
        Cmd::Weights { file } => (Command::Weights, file),
        Cmd::Coords { file } => (Command::Coords, file),
        Cmd::Jets { file } => (Command::Jets, file),
        Cmd::Osculate { file } => (Command::Osculate, file),
        Cmd::Report { file } => (Command::Report, file),
    };
    let ov = Overrides {
        degree_bound: cli.degree_bound,
        samples: cli.samples,
        seed: cli.seed,
    };
    let problem = match load_problem(file, ov) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    let report = run(cmd, &problem);
    let json_to_stdout = cli.json.as_deref() == Some("-");
    if !cli.quiet && !json_to_stdout {
        print!("{}", report.to_text());
    }
    match cli.json.as_deref() {
        Some("-") => {
            let _ = std::io::stdout().write_all(report.to_json().as_bytes());
        }
        Some(path) => {
            if let Err(e) = std::fs::write(path, report.to_json()) {
                eprintln!("error: cannot write {path}: {e}");
                return ExitCode::from(3);
            }
        }
        None => {}
    }
    ExitCode::from(report.exit_code() as u8)
}
