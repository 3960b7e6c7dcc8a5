use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qfano_cli::{
    cmd_qsmooth, cmd_replicate_file, cmd_replicate_sample, cmd_wps_info, exit, exit_code, read_json, render_qsmooth, render_report, render_wps_info, CliError,
    QsmoothMode, RunOptions, VarietyFile, DEFAULT_RETRIES,
};
use qfano_core::family::TripletRecord;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "qfano", version, about = "Exact checks for weighted Fano threefolds and their links")]
struct Cli {
    /// Worker threads (0: one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Also write the report as JSON to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CheckArgs {
    /// Gröbner bases over the input field instead of modulo primes.
    #[arg(long)]
    exact: bool,
    /// Primes for the modular checks.
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Cap on S-pairs per Gröbner run.
    #[arg(long)]
    budget: Option<usize>,
}

impl CheckArgs {
    fn run_options(&self) -> RunOptions {
        RunOptions { exact: self.exact, primes: self.primes.clone(), budget: self.budget, self_check: false }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Well-formedness, (A^3), Fano index and coordinate points.
    WpsInfo {
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
    },
    /// Full pipeline on a triplet file or a sampled triplet.
    Replicate {
        /// JSON file with {field, a6, b6, c8}.
        #[arg(conflicts_with = "sample", required_unless_present = "sample")]
        triplet: Option<PathBuf>,
        #[arg(long)]
        sample: Option<u64>,
        /// Sample with b6 = a6.
        #[arg(long, requires = "sample")]
        symmetric: bool,
        #[arg(long, default_value_t = DEFAULT_RETRIES)]
        retries: usize,
        #[command(flatten)]
        check: CheckArgs,
    },
    /// Quasismoothness of a variety spec, stratum by stratum.
    Qsmooth {
        /// JSON file with {weights, variables, equations, field?}.
        spec: PathBuf,
        /// Monomial criteria for the general member with the same support.
        #[arg(long, conflicts_with = "member")]
        general: bool,
        /// Decide the given member (default).
        #[arg(long)]
        member: bool,
        /// Variables whose coordinate points are exempt.
        #[arg(long, value_delimiter = ',')]
        allow: Vec<String>,
        #[command(flatten)]
        check: CheckArgs,
    },
}

fn emit<T: Serialize>(json: &Option<PathBuf>, text: String, report: &T) -> Result<(), CliError> {
    print!("{text}");
    if let Some(path) = json {
        let mut body = serde_json::to_string_pretty(report).expect("serializable");
        body.push('\n');
        std::fs::write(path, body).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::WpsInfo { weights, degrees } => {
            let r = cmd_wps_info(&weights, &degrees)?;
            emit(&cli.json, render_wps_info(&r), &r)?;
            Ok(exit_code(r.verdict))
        }
        Command::Replicate { triplet, sample, symmetric, retries, check } => {
            let opts = check.run_options();
            let r = match (triplet, sample) {
                (Some(path), _) => {
                    let rec: TripletRecord = read_json(&path)?;
                    cmd_replicate_file(&rec, &opts)?
                }
                (None, Some(seed)) => match cmd_replicate_sample(seed, symmetric, retries, &opts) {
                    Err(CliError::Core(e @ qfano_core::Error::RetriesExhausted(_))) => {
                        eprintln!("qfano: {e}");
                        return Ok(exit::FAILED);
                    }
                    other => other?,
                },
                (None, None) => return Err(CliError::Usage("give a triplet file or --sample".into())),
            };
            emit(&cli.json, render_report(&r), &r)?;
            Ok(exit_code(r.summary.verdict))
        }
        Command::Qsmooth { spec, general, member: _, allow, check } => {
            let file: VarietyFile = read_json(&spec)?;
            let mode = if general { QsmoothMode::General } else { QsmoothMode::Member };
            let r = cmd_qsmooth(&file, mode, &allow, &check.run_options())?;
            emit(&cli.json, render_qsmooth(&r), &r)?;
            Ok(exit_code(r.verdict))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs;
    let code = qfano_core::par::install(jobs, || match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qfano: {e}");
            exit::INPUT
        }
    });
    ExitCode::from(code as u8)
}
