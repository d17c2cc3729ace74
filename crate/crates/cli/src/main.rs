//! `toric-relax`: command-line access to triangulations, Groebner bases, group
//! relaxations, standard pairs, Hilbert bases and the brute-force oracle.
//!
//! Exit status: 0 on success, 1 on domain errors, 2 on unreadable or malformed input.
//! Errors are printed to stdout as `{"error":{"kind":…,"message":…}}`.

mod commands;
mod input;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use commands::Problem;
use serde_json::json;

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Lib(toric_relax::Error),
}

impl From<toric_relax::Error> for CliError {
    fn from(e: toric_relax::Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Io(_) => "Io",
            CliError::Lib(e) => e.kind(),
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Io(m) => m.clone(),
            CliError::Lib(e) => e.to_string(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Lib(toric_relax::Error::Parse(_)) => 2,
            CliError::Lib(_) => 1,
        }
    }
}

#[derive(Parser)]
#[command(name = "toric-relax", version, about = "Group relaxations of integer programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON output (default)
    #[arg(long, global = true)]
    json: bool,
    /// Tab-separated output
    #[arg(long, global = true, conflicts_with = "json")]
    tsv: bool,
}

/// Matrix files hold a `d n` header followed by `d` rows; inline matrices separate rows
/// with `;`. Vectors are files or inline lists.
#[derive(Args)]
struct ProblemArgs {
    #[arg(long)]
    matrix: String,
    /// Cost vector; sampled uniformly from 0..=99 using --seed when omitted
    #[arg(long, allow_hyphen_values = true)]
    cost: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl ProblemArgs {
    fn load(&self) -> Result<Problem, CliError> {
        Problem::load(&self.matrix, self.cost.as_deref(), self.seed)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Regular subdivision induced by the cost, with dual certificates
    Triangulate(ProblemArgs),
    /// Reduced toric Groebner basis and initial ideal
    Groebner(ProblemArgs),
    /// Optimal solution of the integer program for a right-hand side
    Solve {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
        /// Enumerate the fiber instead of reducing by the Groebner basis
        #[arg(long)]
        oracle: bool,
    },
    /// Group relaxation on a face of the triangulation
    Relax {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
        /// 1-based column indices, e.g. `1,4,5`; `{}` for the empty face
        #[arg(long)]
        face: String,
        /// Decide solvability by enumerating the standard polytope
        #[arg(long)]
        oracle: bool,
    },
    /// Solve by searching standard pairs for a covering relaxation
    SolveSp {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
    },
    /// Standard-pair decomposition, multiplicities and associated sets
    Stdpairs {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Brute-force the pairs from standard polytopes
        #[arg(long)]
        oracle: bool,
    },
    /// Associated sets, chains and the chain-length bound
    Assoc(ProblemArgs),
    /// Gomory-family and TDI tests
    Gomory(ProblemArgs),
    /// Hilbert basis of the cone over the columns of a matrix
    Hilbert {
        #[arg(long)]
        generators: String,
    },
    /// Normality, Delta-normality and supernormality
    Normality {
        #[arg(long)]
        matrix: String,
        /// JSON list of 1-based maximal faces
        #[arg(long)]
        triangulation: Option<String>,
        #[arg(long = "super")]
        check_super: bool,
    },
    /// A cost whose programs form a Gomory family for a Delta-normal triangulation
    GomoryCost {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        triangulation: String,
    },
    /// Matrix and cost of the family with associated-set chains of length 2^m - (m+1)
    SharpFamily {
        #[arg(long)]
        m: usize,
    },
    /// Brute-force geometric computations
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Lattice points of the standard polytope of a root and a face
    Points {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long)]
        face: String,
        #[arg(long, allow_hyphen_values = true)]
        root: String,
    },
    /// All nonnegative integer solutions of Ax = b, and the optimum when a cost is given
    Fiber {
        #[arg(long)]
        matrix: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
        #[arg(long, allow_hyphen_values = true)]
        cost: Option<String>,
    },
    /// Standard pairs from standard polytopes
    Stdpairs(ProblemArgs),
}

fn run(command: &Command) -> Result<serde_json::Value, CliError> {
    match command {
        Command::Triangulate(p) => commands::triangulate(&p.load()?),
        Command::Groebner(p) => commands::groebner(&p.load()?),
        Command::Solve { problem, rhs, oracle } => commands::solve(&problem.load()?, rhs, *oracle),
        Command::Relax { problem, rhs, face, oracle } => commands::relax(&problem.load()?, rhs, face, *oracle),
        Command::SolveSp { problem, rhs } => commands::solve_sp(&problem.load()?, rhs),
        Command::Stdpairs { problem, oracle } => commands::stdpairs(&problem.load()?, *oracle),
        Command::Assoc(p) => commands::assoc(&p.load()?),
        Command::Gomory(p) => commands::gomory(&p.load()?),
        Command::Hilbert { generators } => commands::hilbert(generators),
        Command::Normality { matrix, triangulation, check_super } => {
            commands::normality(matrix, triangulation.as_deref(), *check_super)
        }
        Command::GomoryCost { matrix, triangulation } => commands::gomory_cost_cmd(matrix, triangulation),
        Command::SharpFamily { m } => commands::sharp(*m),
        Command::Oracle(OracleCommand::Points { problem, face, root }) => {
            commands::oracle_points(&problem.load()?, face, root)
        }
        Command::Oracle(OracleCommand::Fiber { matrix, rhs, cost }) => {
            commands::oracle_fiber(matrix, rhs, cost.as_deref())
        }
        Command::Oracle(OracleCommand::Stdpairs(p)) => commands::stdpairs(&p.load()?, true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(report) => {
            let text = if cli.tsv { output::tsv(&report) } else { output::json(&report) };
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let report = json!({"error": {"kind": e.kind(), "message": e.message()}});
            print!("{}", output::json(&report));
            ExitCode::from(e.exit_code())
        }
    }
}
