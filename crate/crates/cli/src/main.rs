use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod verify;

use nodeorder::dynamics::ORDER_TOL;

#[derive(Parser)]
#[command(
    name = "nodeorder",
    version,
    about = "Degree-dominance preorder, equitable partitions and monotone network dynamics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coarsest equitable partition (partition.json).
    Cep(Common),
    /// Dominance preorder (relation.json, condensation.dot, partition.json).
    Preorder(Common),
    /// Logistic dynamics with order monitoring (trajectory.csv, violations.json).
    Simulate(Simulate),
    /// Lumped dynamics on the partition classes (quotient.json, quotient_trajectory.csv).
    Quotient(Simulate),
    /// Envelope of a trajectory between lumped runs (lower.csv, upper.csv, trajectory.csv).
    Bound(Simulate),
    /// Cross-checks against brute-force references (verify_report.txt).
    Verify(Verify),
}

#[derive(Args, Clone, Debug)]
pub struct Source {
    /// Edge-list file: one `u v` per line, `#` comments.
    #[arg(long, value_name = "FILE", conflicts_with = "generate")]
    pub graph: Option<PathBuf>,
    /// Generator spec `name:params:seed`, e.g. `cycle:4` or `random_regular:12,3:42`.
    #[arg(long, value_name = "SPEC")]
    pub generate: Option<String>,
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    #[command(flatten)]
    pub source: Source,
    /// Output directory.
    #[arg(long, value_name = "DIR", default_value = ".")]
    pub out: PathBuf,
}

#[derive(Args, Clone, Debug)]
pub struct Simulate {
    #[command(flatten)]
    pub common: Common,
    /// Infection rate.
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    /// Time horizon.
    #[arg(long, default_value_t = 10.0)]
    pub horizon: f64,
    /// RK4 step.
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    /// Discrete-time step; a number or `max`. Switches to the discrete map.
    #[arg(long, value_name = "R|max")]
    pub h: Option<String>,
    /// Number of discrete steps (default: horizon / h, rounded up).
    #[arg(long)]
    pub steps: Option<usize>,
    /// Initial state: one value for all nodes, a comma list, `random` or `consistent`.
    #[arg(long, default_value = "0.1")]
    pub y0: String,
    /// Seed for random initial states.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance for order, lumping and bracketing checks.
    #[arg(long, default_value_t = ORDER_TOL)]
    pub tol: f64,
    /// Fail if the initial state is not ordered along the preorder.
    #[arg(long)]
    pub require_consistent: bool,
}

#[derive(Args, Clone, Debug)]
pub struct Verify {
    #[command(flatten)]
    pub source: Source,
    /// Output directory.
    #[arg(long, value_name = "DIR", default_value = ".")]
    pub out: PathBuf,
    /// Seed of the batch run used when no graph is given.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random graphs in the batch run.
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    /// Longest walk length for the adapted-map check.
    #[arg(long, default_value_t = 3)]
    pub max_len: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Cep(args) => commands::cep(&args),
        Command::Preorder(args) => commands::preorder(&args),
        Command::Simulate(args) => commands::simulate(&args),
        Command::Quotient(args) => commands::quotient(&args),
        Command::Bound(args) => commands::bound(&args),
        Command::Verify(args) => verify::run(&args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
