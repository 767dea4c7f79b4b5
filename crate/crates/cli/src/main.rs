mod commands;
mod sweep;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hcol_core::{Ceilings, ErrorClass};
use std::path::PathBuf;
use std::process::ExitCode;

/// Kernels, witness numbers, representations and reductions for H-Coloring
/// parameterized by vertex cover.
#[derive(Parser, Debug)]
#[command(name = "hcol", version)]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Seed for every randomized step.
    #[arg(long, env = "HCOL_SEED", default_value_t = 0, global = true)]
    pub seed: u64,
    /// Worker threads for the library's inner parallelism (default: all cores).
    #[arg(long, env = "HCOL_THREADS", global = true)]
    pub threads: Option<usize>,
    /// Write the main result here instead of stdout.
    #[arg(long, short, env = "HCOL_OUTPUT", global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, env = "HCOL_FORMAT", value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Largest source graph for the homomorphism oracle.
    #[arg(long, env = "HCOL_ORACLE_VERTICES", global = true, value_parser = positive)]
    pub oracle_vertices: Option<usize>,
    /// Largest graph for the exact witness-number search.
    #[arg(long, env = "HCOL_WITNESS_VERTICES", global = true, value_parser = positive)]
    pub witness_vertices: Option<usize>,
    /// Largest candidate in the edge-gadget search.
    #[arg(long, env = "HCOL_GADGET_VERTICES", global = true, value_parser = positive)]
    pub gadget_vertices: Option<usize>,
    /// Largest extension degree for field construction.
    #[arg(long, env = "HCOL_FIELD_DEGREE", global = true, value_parser = positive)]
    pub field_degree: Option<usize>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

impl RunConfig {
    pub fn ceilings(&self) -> Ceilings {
        let mut c = Ceilings::default();
        if let Some(v) = self.oracle_vertices {
            c.oracle_vertices = v;
        }
        if let Some(v) = self.witness_vertices {
            c.witness_vertices = v;
        }
        if let Some(v) = self.gadget_vertices {
            c.gadget_vertices = v;
        }
        if let Some(v) = self.field_degree {
            c.field_degree = v.min(u32::MAX as usize) as u32;
        }
        c
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the non-adjacency witness number and a tight witness set.
    Witness {
        graph: PathBuf,
    },
    /// Kernelize a vertex-cover instance for a target graph.
    Kernelize(commands::KernelizeArgs),
    /// Build a faithful representation.
    Represent(commands::RepresentArgs),
    /// Run a reduction into H-Coloring.
    Reduce(commands::ReduceArgs),
    /// Run an experiment sweep and print a CSV table.
    Sweep(sweep::SweepArgs),
}

/// Failure with the exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(hcol_core::Error),
    /// A reduction precondition that the input cannot meet.
    Infeasible(String),
    Violation(String),
}

impl From<hcol_core::Error> for CliError {
    fn from(e: hcol_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Infeasible(_) => 2,
            CliError::Violation(_) => 3,
            CliError::Core(e) => match e.class() {
                ErrorClass::Input => 1,
                ErrorClass::Feasibility => 2,
                ErrorClass::Internal => 3,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Infeasible(m) => f.write_str(m),
            CliError::Violation(m) => write!(f, "invariant violation: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hcol: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads(cli.run.threads)?;
    let cfg = &cli.run;
    match &cli.command {
        Command::Witness { graph } => commands::witness(cfg, graph),
        Command::Kernelize(args) => commands::kernelize(cfg, args),
        Command::Represent(args) => commands::represent(cfg, args),
        Command::Reduce(args) => commands::reduce(cfg, args),
        Command::Sweep(args) => sweep::sweep(cfg, args),
    }
}

#[cfg(feature = "parallel")]
fn configure_threads(threads: Option<usize>) -> Result<(), CliError> {
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot configure {n} threads: {e}")))?;
    }
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(_threads: Option<usize>) -> Result<(), CliError> {
    Ok(())
}
