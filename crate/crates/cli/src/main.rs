use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use firstint_cli::job::{CoeffKind, SummandDoc};
use firstint_cli::{commands, exit, replay, CliError, CliResult, Job, Overrides, Report};

#[derive(Parser)]
#[command(name = "firstint", version, about = "Monomial first integrals, invariants and equivariants")]
struct Cli {
    /// Encoding of the Laurent elimination ideal.
    #[arg(long, global = true, value_parser = ["laurent", "sign-split"])]
    strategy: Option<String>,
    /// Coefficient field for Groebner computations.
    #[arg(long, global = true, value_parser = ["q", "gfp"])]
    coeff_field: Option<String>,
    /// Characteristic used with `--coeff-field gfp`.
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Maximum number of S-pair reductions per Groebner basis.
    #[arg(long, global = true)]
    gb_budget: Option<u64>,
    #[arg(long, global = true, default_value = "text", value_parser = ["text", "machine"])]
    output: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert basis, first integrals, Z-module generators and rank condition.
    Integrals {
        /// Job document, or `-` for stdin.
        job: PathBuf,
    },
    /// Generators of the monomial invariants of a parametric system.
    Invariants { job: PathBuf },
    /// Resonance sets, equivariants, syzygies and an optional decomposition check.
    Equivariants {
        job: PathBuf,
        /// JSON list of summands `{k, gamma, integrals}`; replaces the job's own.
        #[arg(long)]
        decomposition: Option<PathBuf>,
    },
    /// Compares the Hilbert basis with brute-force enumeration in a box.
    OracleCheck {
        job: PathBuf,
        #[arg(long = "box")]
        bound: Option<u32>,
    },
    /// Reruns a bundled reference session and diffs against its output.
    ReplayAppendix {
        #[arg(value_parser = ["A", "B", "C", "D", "E", "a", "b", "c", "d", "e"])]
        appendix: String,
    },
}

fn read(path: &Path) -> CliResult<String> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn run(cli: &Cli) -> CliResult<Report> {
    let flags = Overrides {
        strategy: cli.strategy.as_deref().map(|s| s.parse().expect("restricted by clap")),
        coeff_field: cli
            .coeff_field
            .as_deref()
            .map(|s| s.parse::<CoeffKind>().expect("restricted by clap")),
        prime: cli.prime,
        gb_budget: cli.gb_budget,
    };
    let load = |path: &Path| Job::parse(&read(path)?, &flags);
    Ok(match &cli.command {
        Command::Integrals { job } => Report::Integrals(commands::integrals(&load(job)?)?),
        Command::Invariants { job } => Report::Invariants(commands::invariants(&load(job)?)?),
        Command::Equivariants { job, decomposition } => {
            let dec: Option<Vec<SummandDoc>> = decomposition
                .as_deref()
                .map(|p| Ok::<_, CliError>(serde_json::from_str(&read(p)?)?))
                .transpose()?;
            Report::Equivariants(commands::equivariants(&load(job)?, dec.as_deref())?)
        }
        Command::OracleCheck { job, bound } => Report::Oracle(commands::oracle_check(&load(job)?, *bound)?),
        Command::ReplayAppendix { appendix } => Report::Replay(replay::replay(appendix, &flags)?),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let out = if cli.output == "machine" {
                report.to_machine()
            } else {
                report.to_text()
            };
            print!("{out}");
            match report.failed_check() {
                Some(msg) => {
                    eprintln!("firstint: {msg}");
                    ExitCode::from(exit::MISMATCH as u8)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("firstint: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
