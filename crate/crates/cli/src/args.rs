use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Computations in free Steiner loops, their automorphisms, and finite
/// Steiner triple systems.
///
/// Exit status: 0 success, 1 mathematical negative (not an automorphism,
/// a failed check, a growth divergence), 2 malformed input, 3 resource cap.
#[derive(Debug, Parser)]
#[command(name = "steiner", version)]
pub struct Cli {
    /// Number of free generators x1..xn.
    #[arg(short = 'n', long = "generators", global = true, default_value_t = 3)]
    pub generators: usize,

    /// Word-length bound for enumerations (closure, nucleus-scan).
    #[arg(long, global = true)]
    pub max_len: Option<usize>,

    /// Cap on enumerated group elements.
    #[arg(long, global = true)]
    pub max_elements: Option<usize>,

    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a word to canonical form.
    Eval { word: String },
    /// Canonicalize a word and report whether it already was canonical.
    Normalize { word: String },
    /// List the subloop generated by the words, up to --max-len.
    Closure {
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Nielsen-reduce a tuple of words.
    Reduce {
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Test whether the generator images define an automorphism.
    IsAut(Images),
    /// Write an automorphism as a product of elementary automorphisms.
    Decompose(Images),
    /// Invert an automorphism.
    Invert(Images),
    /// Factor an element of the multiplication group through the stabilizer
    /// of e and rewrite the stabilizer part in Schreier generators.
    MultRewrite {
        /// Element such as `R[x1]*R[(x2 x1)]`; `1` is the identity.
        element: String,
    },
    /// Relations between automorphisms of the loop on three generators.
    #[command(subcommand)]
    Relations(RelationsCommand),
    /// Show that no short nonempty word lies in the nucleus.
    NucleusScan,
    /// Steiner triple systems and their loops.
    #[command(subcommand)]
    Sts(StsCommand),
}

#[derive(Debug, Args)]
pub struct Images {
    /// Image of each generator, in order.
    #[arg(long, num_args = 1.., required = true)]
    pub images: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum RelationsCommand {
    /// Check every known identity.
    VerifyKnown,
    /// Breadth-first search of a Cayley graph.
    Bfs {
        /// Comma-separated generators from phi, 12, 13, tau, xi.
        #[arg(long, value_delimiter = ',', conflicts_with = "free_family")]
        letters: Vec<String>,
        /// All e_i(v) for one target, e.g. `e1`, with |v| ≤ --family-len.
        #[arg(long)]
        free_family: Option<String>,
        #[arg(long, default_value_t = 2)]
        family_len: usize,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Cap on the total image length of any element.
        #[arg(long)]
        max_image_len: Option<usize>,
    },
    /// Compare growth with a conjectured presentation.
    Conjecture {
        /// 1: Coxeter group on phi, (12), (13); 2: S3 * C2 on phi, tau, xi.
        #[arg(long)]
        target: u8,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Search words phi s1 phi s2 ... for hidden identities.
    Constrained {
        #[arg(long, default_value_t = 6)]
        blocks: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TableKind {
    Quasigroup,
    Exterior,
    Interior,
}

#[derive(Debug, Subcommand)]
pub enum StsCommand {
    /// Validate a triple system file.
    Validate { file: PathBuf },
    /// Print a Cayley table.
    Tables {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = TableKind::Exterior)]
        kind: TableKind,
        /// Base point for the interior loop.
        #[arg(long, default_value_t = 1)]
        base: usize,
    },
    /// Automorphism groups of the system, its quasigroup and exterior loop.
    Aut { file: PathBuf },
    /// S-decomposition checks for a loop's multiplication group.
    Sdecomp {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = TableKind::Exterior)]
        kind: TableKind,
        #[arg(long, default_value_t = 1)]
        base: usize,
    },
    /// Compare Aut of the interior loop with a point stabilizer.
    T4 {
        file: PathBuf,
        #[arg(long)]
        base: usize,
    },
}
