use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::{CliError, Outcome};

#[derive(Debug, Parser)]
#[command(name = "amply", version, about = "Curvature and bound checks for amply regular graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether the graph is amply regular and print (n, d, alpha, beta).
    Detect(#[command(flatten)] Common),
    /// Edge or vertex curvature tables.
    Curvature {
        #[command(subcommand)]
        kind: CurvatureKind,
    },
    /// Run every bound check and report each one.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Comparison tolerance; may only be tightened below the default.
        #[arg(long)]
        tolerance: Option<f64>,
        /// Random subsets per sampled isoperimetric check.
        #[arg(long, default_value_t = amply::bounds::DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Print a graph file for a named family.
    Gen {
        family: String,
        params: Vec<usize>,
    },
}

#[derive(Debug, Subcommand)]
enum CurvatureKind {
    /// Lin-Lu-Yau curvature of every edge, as exact rationals.
    Lly(#[command(flatten)] Common),
    /// Bakry-Emery curvature of every vertex.
    Be {
        #[command(flatten)]
        common: Common,
        /// `plus`, `minus`, or `file PATH` (a signed graph file).
        #[arg(long, num_args = 1..=2, value_names = ["KIND", "PATH"])]
        signature: Option<Vec<String>>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Args)]
struct Common {
    /// Graph file: header `n m`, then `u v [sign]` per edge.
    #[arg(long, conflicts_with = "family")]
    input: Option<PathBuf>,
    /// Named family, e.g. hypercube, shrikhande, johnson.
    #[arg(long, required_unless_present = "input")]
    family: Option<String>,
    #[arg(long, num_args = 0.., requires = "family")]
    params: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long, default_value_t = amply::bounds::DEFAULT_SEED)]
    seed: u64,
    /// Worker threads (defaults to all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

impl Common {
    fn source(&self) -> commands::Source {
        match (&self.input, &self.family) {
            (Some(path), _) => commands::Source::File(path.clone()),
            (None, Some(name)) => commands::Source::Family(name.clone(), self.params.clone()),
            (None, None) => unreachable!("clap requires one of --input, --family"),
        }
    }

    fn init_pool(&self) -> Result<(), CliError> {
        if let Some(jobs) = self.jobs {
            if jobs == 0 {
                return Err(CliError::Usage("--jobs must be positive".into()));
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build_global()
                .map_err(|e| CliError::Usage(e.to_string()))?;
        }
        Ok(())
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Detect(c) => {
            c.init_pool()?;
            commands::detect(&c.source(), c.format)
        }
        Command::Curvature { kind: CurvatureKind::Lly(c) } => {
            c.init_pool()?;
            commands::curvature_lly(&c.source(), c.format)
        }
        Command::Curvature { kind: CurvatureKind::Be { common, signature } } => {
            common.init_pool()?;
            let choice = commands::SignatureChoice::parse(signature.as_deref())?;
            commands::curvature_be(&common.source(), &choice, common.format)
        }
        Command::Verify { common, tolerance, samples } => {
            common.init_pool()?;
            let options = commands::verify_options(common.seed, tolerance, samples)?;
            commands::verify(&common.source(), options, common.format)
        }
        Command::Gen { family, params } => commands::gen(&family, &params),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            match outcome.failure {
                Some(first) => {
                    eprintln!("verification failed: {first}");
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
