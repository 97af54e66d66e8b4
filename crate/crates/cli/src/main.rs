//! `pipqr`: batch analyses of polynomial quotient rings and their codes.
//!
//! Exit status: 0 success, 1 negative verdict, 2 invalid job, 3 resource cap.

mod commands;
mod job;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{Method, Outcome};
use job::{Job, JobError};
use report::Failure;

#[derive(Parser)]
#[command(name = "pipqr", version, about = "Principal ideal polynomial quotient rings and their codes")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the parallel scans.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the ambient is a principal ideal ring.
    CheckPir { job: PathBuf },
    /// Split the ambient into finite chain rings.
    Decompose {
        job: PathBuf,
        /// Include idempotent and uniformizer tensors.
        #[arg(long)]
        idempotents: bool,
        /// Run the chain ring certificate on every summand.
        #[arg(long)]
        certify: bool,
    },
    /// List every code with its cardinality.
    Enumerate {
        job: PathBuf,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Minimum distance of the job's code.
    Distance {
        job: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        /// Largest number of codewords to scan.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Additive codes over F_4.
    Additive {
        #[command(subcommand)]
        action: AdditiveCommand,
    },
}

#[derive(Subcommand)]
enum AdditiveCommand {
    /// Count all additive codes and the single-generator ones.
    Count { job: PathBuf },
    /// Staircases and generator rank of the job's code.
    Rank { job: PathBuf },
    /// Quantum parameters of a self-orthogonal code.
    Quantum {
        job: PathBuf,
        #[arg(long)]
        cap: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exhaustive,
    Quotient,
    Both,
}

fn load(path: &PathBuf) -> Result<Job, Failure> {
    let source = std::fs::read_to_string(path).map_err(|e| {
        Failure::Parse(JobError { location: None, message: format!("cannot read {}: {e}", path.display()) })
    })?;
    Ok(Job::parse(&source)?)
}

type Action<'a> = Box<dyn FnOnce(&Job) -> Outcome + 'a>;

fn run(command: &Command) -> (&'static str, Result<Job, Failure>, Action<'_>) {
    match command {
        Command::CheckPir { job } => ("check-pir", load(job), Box::new(commands::check_pir)),
        Command::Decompose { job, idempotents, certify } => {
            ("decompose", load(job), Box::new(move |j| commands::decompose(j, *idempotents, *certify)))
        }
        Command::Enumerate { job, cap } => ("enumerate", load(job), Box::new(move |j| commands::enumerate(j, *cap))),
        Command::Distance { job, method, cap } => {
            let m = match method {
                MethodArg::Exhaustive => Method::Exhaustive,
                MethodArg::Quotient => Method::Quotient,
                MethodArg::Both => Method::Both,
            };
            ("distance", load(job), Box::new(move |j| commands::distance(j, m, *cap)))
        }
        Command::Additive { action } => match action {
            AdditiveCommand::Count { job } => ("additive count", load(job), Box::new(commands::additive_count)),
            AdditiveCommand::Rank { job } => ("additive rank", load(job), Box::new(commands::additive_rank)),
            AdditiveCommand::Quantum { job, cap } => {
                ("additive quantum", load(job), Box::new(move |j| commands::additive_quantum(j, *cap)))
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let (name, job, action) = run(&cli.command);
    let sha = job.as_ref().ok().map(|j| j.sha256.clone());
    match job.and_then(|j| action(&j)) {
        Ok((report, ok)) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(f) => {
            if cli.json {
                println!("{}", f.to_json(name, sha.as_deref()));
            } else {
                eprintln!("error: {}", f.message());
            }
            ExitCode::from(f.code() as u8)
        }
    }
}
