use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "gable",
    version,
    about = "Exact homology, shuffle products, roof maps and Čech towers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    pub out: OutputFormat,

    /// Seed for randomized suites.
    #[arg(long, env = "GABLE_SEED", default_value_t = 0, global = true)]
    pub seed: u64,

    /// Worker threads for suites (0 = all cores).
    #[arg(long, default_value_t = 0, global = true)]
    pub jobs: usize,

    /// Add wall-clock timing to the report (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

/// A complex given directly or as a pair file, with an optional subcomplex.
#[derive(Debug, Clone, Args)]
pub struct PairInput {
    /// Complex file `{"vertices", "simplices"}`.
    #[arg(long, conflicts_with = "pair")]
    pub complex: Option<PathBuf>,
    /// Pair file `{"complex", "sub"}`.
    #[arg(long)]
    pub pair: Option<PathBuf>,
    /// Subcomplex file, used with `--complex`.
    #[arg(long, requires = "complex")]
    pub sub: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integral (relative) homology with generators.
    Homology {
        #[command(flatten)]
        input: PairInput,
        /// Degree; all degrees when omitted.
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
    },
    /// Barycentric subdivision, with the induced subdivision and the partition check.
    Subdivide {
        #[command(flatten)]
        input: PairInput,
    },
    /// Cone on the subcomplex, compared with relative homology.
    Cone {
        #[command(flatten)]
        input: PairInput,
    },
    /// Retraction data of a point onto a full subcomplex.
    Retract {
        #[command(flatten)]
        input: PairInput,
        /// Point file `{"coords": {...}}`.
        #[arg(long)]
        point: PathBuf,
        /// Homotopy parameter in [0, 1], e.g. `1/2`.
        #[arg(long, default_value = "1")]
        t: String,
    },
    /// Simplicial cross product of two chains.
    Cross {
        /// Complex of the first factor; the closure of its terms when omitted.
        #[arg(long)]
        complex: Option<PathBuf>,
        /// Complex of the second factor (defaults to the first).
        #[arg(long)]
        right: Option<PathBuf>,
        /// Two chain files.
        #[arg(long, num_args = 2, required = true)]
        terms: Vec<PathBuf>,
    },
    /// Projection of a cross product onto the swap quotient.
    Quotient {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long, num_args = 2, required = true)]
        terms: Vec<PathBuf>,
    },
    /// Staircase self-product, its swap quotient and the diagonal subcomplex.
    ProductComplex {
        #[arg(long)]
        complex: PathBuf,
    },
    /// Roof of an even-dimensional chain and its relative class.
    Roof {
        /// Ambient complex; the closure of the chain's terms when omitted.
        #[arg(long)]
        complex: Option<PathBuf>,
        #[arg(long)]
        terms: PathBuf,
        /// Region file; the diagonal region by default.
        #[arg(long)]
        region: Option<PathBuf>,
        /// Skip the relative homology computation.
        #[arg(long)]
        no_class: bool,
    },
    /// Classes of the roof modulo a nested family of regions.
    RoofFamily {
        /// Ambient complex; the closure of the chain's terms when omitted.
        #[arg(long)]
        complex: Option<PathBuf>,
        #[arg(long)]
        terms: PathBuf,
        /// `{"regions": [...]}`, outermost first.
        #[arg(long)]
        region: PathBuf,
    },
    /// Roof of a fundamental cycle versus the expected gable support.
    FundamentalCheck {
        #[arg(long)]
        complex: PathBuf,
        /// Fundamental term list; computed from homology when omitted.
        #[arg(long)]
        terms: Option<PathBuf>,
    },
    /// Nerve of a cover with its relative part.
    Nerve {
        /// Cover file `{"ground", "sets", "relative"}`.
        #[arg(long)]
        cover: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
    },
    /// Common refinement of two covers of the same ground set.
    Refine {
        #[arg(long, num_args = 2, required = true)]
        cover: Vec<PathBuf>,
    },
    /// Projection from a fine cover's nerve to a coarse one's.
    Project {
        /// Fine cover, then coarse cover.
        #[arg(long, num_args = 2, required = true)]
        cover: Vec<PathBuf>,
        /// Witness file `{"assignment": {...}}`.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        k: i64,
        /// Compare the induced maps of every valid witness.
        #[arg(long)]
        all_witnesses: bool,
    },
    /// Čech homology of a tower of covers.
    Cech {
        #[arg(long)]
        tower: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Comma-separated sub-collection to compare against.
        #[arg(long, value_delimiter = ',')]
        cofinal: Vec<String>,
    },
    /// Inverse limit of a finite system of groups.
    Limit {
        #[arg(long)]
        system: PathBuf,
    },
    /// Cofinality class of a subset and the limit comparison morphism.
    Cofinal {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<String>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: crate::suites::Suite,
        /// Largest dimension exercised by dimension-bounded suites.
        #[arg(long)]
        max_k: Option<usize>,
        /// Number of randomized cases.
        #[arg(long)]
        trials: Option<usize>,
    },
}
