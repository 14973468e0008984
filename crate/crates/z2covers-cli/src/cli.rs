//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Environment variable holding the default worker count.
pub const THREADS_ENV: &str = "Z2COVERS_THREADS";

/// Exact invariants, geography and pluricanonical classification of
/// (Z/2)^s-covers of weighted projective threefolds.
#[derive(Debug, Parser)]
#[command(name = "z2covers", version, about)]
pub struct Cli {
    /// Worker threads; defaults to the environment variable, else all cores.
    #[arg(long, global = true, env = THREADS_ENV)]
    pub threads: Option<usize>,
    /// The command to run.
    #[command(subcommand)]
    pub command: Command,
}

/// Top-level commands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a cover spec or compute its invariants.
    #[command(subcommand)]
    Cover(CoverCommand),
    /// Limiting Chern-ratio geography on the degree simplex.
    #[command(subcommand)]
    Geography(GeographyCommand),
    /// Classify flat pluricanonical covers of rank s.
    Classify(ClassifyArgs),
    /// Numeric deformation criteria.
    #[command(subcommand)]
    Deform(DeformCommand),
    /// Generate the example families.
    #[command(subcommand)]
    Examples(ExamplesCommand),
    /// Seeded self-tests.
    #[command(subcommand)]
    Selftest(SelftestCommand),
}

/// `cover` subcommands.
#[derive(Debug, Subcommand)]
pub enum CoverCommand {
    /// Check parity, well-formedness, flatness and the half-point count.
    Check {
        /// Cover-spec JSON file.
        file: PathBuf,
    },
    /// Compute K^3, chi(O_X), e(X) and the Chern ratios.
    Invariants {
        /// Cover-spec JSON file.
        file: PathBuf,
    },
}

/// `geography` subcommands.
#[derive(Debug, Subcommand)]
pub enum GeographyCommand {
    /// Sample random rational points of the simplex and emit CSV.
    Sample {
        /// The rank s.
        #[arg(long)]
        s: u32,
        /// Number of samples.
        #[arg(long, default_value_t = 1000)]
        count: u64,
        /// Random seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest integer weight before normalisation.
        #[arg(long, default_value_t = 20)]
        denominator: u32,
    },
    /// Evaluate the vertices, the barycenter and the proven bounds.
    Extremes {
        /// The rank s.
        #[arg(long)]
        s: u32,
    },
    /// Evaluate almost-uniform vectors against the SCI curve.
    Hunt {
        /// The rank s (at least 3).
        #[arg(long, default_value_t = 3)]
        s: u32,
        /// Values of t as exact fractions; may be repeated.
        #[arg(long = "t")]
        t: Vec<String>,
    },
}

/// Which bases to classify over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Base {
    /// P(1,1,1,1) only.
    L1,
    /// Weighted bases with L >= 2 only.
    General,
    /// Both.
    All,
}

/// Output formats for classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// JSON.
    Json,
    /// Markdown table.
    Md,
    /// CSV.
    Csv,
}

/// Arguments of `classify`.
#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// The rank s.
    #[arg(long)]
    pub s: u32,
    /// The plurigenus index m.
    #[arg(long)]
    pub m: u32,
    /// Which bases to include.
    #[arg(long, value_enum, default_value_t = Base::All)]
    pub base: Base,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the pruning bounds used to standard error.
    #[arg(long)]
    pub bounds_report: bool,
    /// Largest t when instantiating double-cover families.
    #[arg(long, default_value_t = z2covers::classify::DEFAULT_T_MAX)]
    pub t_max: u64,
}

/// `deform` subcommands.
#[derive(Debug, Subcommand)]
pub enum DeformCommand {
    /// Evaluate the pairwise and total-degree criteria.
    Check {
        /// Cover-spec JSON file.
        file: PathBuf,
    },
}

/// The unbounded families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Canonical covers.
    Canonical,
    /// Bicanonical covers.
    Bicanonical,
}

/// `examples` subcommands.
#[derive(Debug, Subcommand)]
pub enum ExamplesCommand {
    /// The non-flat rank-4 cover of P(1,1,1,M).
    NewComponent {
        /// Even M >= 4.
        #[arg(long = "M")]
        big_m: u64,
    },
    /// A member of an unbounded non-flat family.
    Unbounded {
        /// Canonical or bicanonical.
        #[arg(long, value_enum)]
        kind: Kind,
        /// The rank s.
        #[arg(long)]
        s: u32,
        /// Include the explicit branch data (ranks up to 16).
        #[arg(long)]
        with_cover: bool,
    },
}

/// `selftest` subcommands.
#[derive(Debug, Subcommand)]
pub enum SelftestCommand {
    /// Fourier identities on random integer functions.
    Fourier {
        /// Random seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Functions per rank.
        #[arg(long, default_value_t = 1000)]
        cases: u64,
        /// Largest rank (ranks 2..=max-s are tested).
        #[arg(long, default_value_t = 8)]
        max_s: u32,
    },
}
