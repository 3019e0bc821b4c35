//! `dregular` command-line tool.
//!
//! Exit codes: 0 on success, 1 when a verdict fails (for example
//! `check --ramanujan` on a non-Ramanujan digraph), 2 on usage or input errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "dregular", version, about = "Regular digraphs, spectra, Ramanujan tests and walk experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Args, Clone)]
pub struct Global {
    /// Write the main artifact here instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    /// JSON output (the default for reports).
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// CSV plot data.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Seed for randomized subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Overrides the Ramanujan slack and the Arnoldi residual tolerance.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Use Arnoldi on the deflated operator instead of dense eigenvalues.
    #[arg(long, global = true)]
    pub sparse: bool,
    /// Number of nontrivial eigenvalues wanted with --sparse.
    #[arg(long, global = true, default_value_t = 6)]
    pub top: usize,
    /// Worker threads for parallel trials.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Largest power or walk length.
    #[arg(long, global = true)]
    pub lmax: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Family {
    Complete,
    Paley,
    Incidence,
    DeBruijn,
    Line,
    Random,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a digraph family and write it in edge-list format.
    Construct {
        family: Family,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Base graph for `line`, e.g. `petersen` or `complete(4)`.
        #[arg(long)]
        graph: Option<String>,
        /// Label file for `line`.
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    /// Spectrum report of a digraph file.
    Spectrum { input: PathBuf },
    /// Verdict checks; the exit code carries the result.
    Check {
        input: Option<PathBuf>,
        /// Undirected built-in graph instead of a digraph file.
        #[arg(long)]
        graph: Option<String>,
        #[arg(long)]
        ramanujan: bool,
    },
    /// Line digraph of a built-in graph, with its 2-normal block certificate.
    LineDigraph {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    /// Cayley digraph of a group generated by projective matrices.
    Cayley {
        /// Field header fields for files without one, e.g. `p=31`.
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, required_unless_present = "builtin")]
        generators: Option<PathBuf>,
        /// Shipped generator set: `psl2-f31` or `pgl3-f4`.
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long, default_value_t = dregular::algebra::DEFAULT_CLOSURE_CAP)]
        cap: usize,
    },
    /// Walk profile, or the Chernoff sampling experiment.
    Walk {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        start: usize,
        #[arg(long)]
        chernoff: bool,
        #[arg(long, default_value_t = 100)]
        ell: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0.25)]
        gamma: f64,
        /// Normality class used for the covering marker in the summary.
        #[arg(long, default_value_t = 2)]
        r: usize,
    },
    /// Zeta function of a digraph, or Ihara zeta function of a graph.
    Zeta {
        input: Option<PathBuf>,
        #[arg(long)]
        graph: Option<String>,
    },
    /// Bound checks on a digraph, a graph, or the built-in corpora.
    Bounds {
        input: Option<PathBuf>,
        #[arg(long)]
        graph: Option<String>,
        /// Certified normality class of the input digraph.
        #[arg(long)]
        r: Option<u64>,
    },
    /// Spectra of random permutation-model digraphs.
    Alon {
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0.3)]
        epsilon: f64,
    },
    /// Gelfand estimates of rho0.
    Gelfand { input: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(commands::Outcome::Pass) => ExitCode::SUCCESS,
        Ok(commands::Outcome::VerdictFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
