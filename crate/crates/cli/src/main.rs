//! `unibraid`: chains of braid-equivalent unimodal permutations, their
//! verification, superattracting parameters, isotracal continuation and
//! Hénon parameter scans.

mod commands;
mod config;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::FileConfig;

#[derive(Debug)]
pub enum Failure {
    Verification(String),
    Numeric(String),
    Input(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 2,
            Failure::Numeric(_) => 3,
            Failure::Input(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Verification(m) => write!(f, "verification failed: {m}"),
            Failure::Numeric(m) => write!(f, "numerical failure: {m}"),
            Failure::Input(m) => write!(f, "bad input: {m}"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "unibraid", version, about)]
struct Cli {
    /// TOML file with defaults for any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct Heads {
    /// Head itinerary such as `1001C`, or a cyclic notation. Repeatable.
    #[arg(long = "head")]
    heads: Vec<String>,
    /// Number of second-return cablings after the first pair.
    #[arg(long)]
    depth: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate chains of pairs and write chains.json and chains.txt.
    Chain {
        #[command(flatten)]
        heads: Heads,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every pair in chain JSON files.
    Verify {
        files: Vec<PathBuf>,
        /// Also write verify.json here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Superattracting parameters for chain itineraries; writes params.csv.
    Params {
        #[command(flatten)]
        heads: Heads,
        /// Chain JSON produced by `chain`. Repeatable.
        #[arg(long = "chain")]
        chains: Vec<PathBuf>,
        /// Extra itineraries. Repeatable.
        #[arg(long = "itinerary")]
        itineraries: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Zero isotracal continuation for every pair of a chain.
    Isotracal {
        #[command(flatten)]
        heads: Heads,
        #[arg(long = "chain")]
        chains: Vec<PathBuf>,
        /// Only these periods. Repeatable.
        #[arg(long = "period")]
        periods: Vec<usize>,
        #[arg(long)]
        tol_meet: Option<f64>,
        #[arg(long)]
        initial_step: Option<f64>,
        #[arg(long)]
        min_step: Option<f64>,
        #[arg(long)]
        max_step: Option<f64>,
        #[arg(long)]
        b_max: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Attracting-period scan of the Hénon parameter plane.
    Scatter {
        /// `p` or `lo..hi`.
        #[arg(long, value_parser = config::parse_periods)]
        period: Option<(usize, usize)>,
        /// `lo,hi`.
        #[arg(long, value_parser = config::parse_range, allow_hyphen_values = true)]
        a_range: Option<(f64, f64)>,
        #[arg(long, value_parser = config::parse_range, allow_hyphen_values = true)]
        b_range: Option<(f64, f64)>,
        /// `AxB` cells.
        #[arg(long, value_parser = config::parse_res)]
        res: Option<(usize, usize)>,
        #[arg(long)]
        transient: Option<usize>,
        #[arg(long)]
        escape_radius: Option<f64>,
        #[arg(long)]
        tol_period: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), Failure> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    if let Some(jobs) = cli.jobs.or(file.jobs) {
        if jobs == 0 {
            return Err(Failure::Input("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Failure::Input(e.to_string()))?;
    }
    match cli.command {
        Command::Chain { heads, out } => commands::chain(&heads, out, &file),
        Command::Verify { files, out } => commands::verify(&files, out),
        Command::Params { heads, chains, itineraries, out } => {
            commands::params(&heads, &chains, &itineraries, out, &file)
        }
        Command::Isotracal { heads, chains, periods, tol_meet, initial_step, min_step, max_step, b_max, out } => {
            let opts = commands::continuation_options(
                &file,
                [tol_meet, initial_step, min_step, max_step, b_max],
            )?;
            commands::isotracal(&heads, &chains, &periods, &opts, out, &file)
        }
        Command::Scatter { period, a_range, b_range, res, transient, escape_radius, tol_period, out } => {
            let spec = commands::scatter_spec(&file, period, a_range, b_range, res, transient, escape_radius, tol_period)?;
            commands::scatter(&spec, out, &file)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(4) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("unibraid: {e}");
            ExitCode::from(e.code())
        }
    }
}
