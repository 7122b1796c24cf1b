use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use arcsub_cli::corpus::{check_dir, Status};
use arcsub_cli::{render, Options};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "arcsub",
    version,
    about = "Rational functions along real Puiseux arcs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Tuning {
    /// Truncation order N.
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(i64).range(1..=4096))]
    order: i64,
    /// Slice-plane budget for witness queries.
    #[arg(long, default_value_t = 20)]
    budget: usize,
    /// Cap on nested number-field extensions.
    #[arg(long, default_value_t = 3)]
    tower_depth: usize,
    /// Worker threads for witness search (0 = one per core).
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

impl Tuning {
    fn options(&self) -> Options {
        Options {
            order: self.order,
            budget: self.budget,
            tower_depth: self.tower_depth,
            workers: self.workers,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a session file and print its report.
    Run {
        file: PathBuf,
        /// Emit one JSON record per query instead of the text report.
        #[arg(long)]
        machine: bool,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Compare every `.sess` in a directory against its golden `.out`.
    CheckCorpus {
        dir: PathBuf,
        /// Rewrite the golden reports instead of comparing.
        #[arg(long)]
        bless: bool,
        #[command(flatten)]
        tuning: Tuning,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            file,
            machine,
            tuning,
        } => {
            let text = match fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("{}: {e}", file.display());
                    return ExitCode::from(2);
                }
            };
            match render(&text, tuning.options(), machine) {
                Ok((out, errored)) => {
                    print!("{out}");
                    ExitCode::from(if errored { 1 } else { 0 })
                }
                Err(d) => {
                    eprintln!("{}:{}:{}: {}", file.display(), d.line, d.col, d.message);
                    ExitCode::from(2)
                }
            }
        }
        Command::CheckCorpus { dir, bless, tuning } => {
            match check_dir(&dir, tuning.options(), bless) {
                Ok(results) => {
                    let mut bad = 0;
                    for (path, status) in &results {
                        let tag = match status {
                            Status::Match => "ok",
                            Status::Blessed => "blessed",
                            Status::Mismatch => "MISMATCH",
                            Status::MissingGolden => "MISSING",
                        };
                        if matches!(status, Status::Mismatch | Status::MissingGolden) {
                            bad += 1;
                        }
                        println!("{tag:8} {}", path.display());
                    }
                    println!("{} sessions, {bad} failing", results.len());
                    ExitCode::from(if bad > 0 { 1 } else { 0 })
                }
                Err(e) => {
                    eprintln!("{}: {e}", dir.display());
                    ExitCode::from(2)
                }
            }
        }
    }
}
