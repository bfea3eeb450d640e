//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "frobchar",
    version,
    about = "Galois groups from Frobenius cycle statistics and permutation characters"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// A catalog group name, or a JSON file with generators, class data or a
/// character table.
#[derive(Clone, Debug, Args)]
pub struct GroupArgs {
    /// Catalog name (see `catalog`) or path to a group file.
    #[arg(long)]
    pub group: Option<String>,
    /// Externally computed class data or character table (JSON).
    #[arg(long, conflicts_with = "group")]
    pub import: Option<PathBuf>,
}

#[derive(Clone, Debug, Args)]
pub struct SampleArgs {
    /// Number of unramified primes, counted from 2.
    #[arg(long, visible_alias = "primes", default_value_t = 128)]
    pub count: usize,
    /// Parallel workers for factorization; the output does not depend on it.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factorization type and s-vector at the first unramified primes.
    Sample {
        polynomial: String,
        #[command(flatten)]
        sample: SampleArgs,
        /// Also evaluate these test functions at each prime.
        #[arg(long)]
        basis: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Empirical Gram matrix of a test basis, against M(G) when a group is
    /// given. Without a polynomial, prints M(G) alone.
    Gram {
        polynomial: Option<String>,
        #[command(flatten)]
        group: GroupArgs,
        /// symmetric | reduced | rational-irreducible | quartic | a5-rational |
        /// comma-separated s-polynomials and kronecker(d) terms.
        #[arg(long, default_value = "symmetric")]
        basis: String,
        /// Per-class values of each quadratic character, one
        /// comma-separated list per character, lists separated by ';'.
        #[arg(long)]
        symbols: Option<String>,
        #[command(flatten)]
        sample: SampleArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Error norms of cumulative Gram matrices at |S| = increment·k.
    Convergence {
        polynomial: String,
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value = "symmetric")]
        basis: String,
        #[arg(long)]
        symbols: Option<String>,
        #[arg(long, default_value_t = 128)]
        increment: usize,
        #[arg(long, default_value_t = 8)]
        batches: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Ranks candidate groups: kernel exclusion, then Gram comparison.
    Identify {
        polynomial: String,
        /// deg4, deg8, or a comma-separated list of catalog names.
        #[arg(long)]
        candidates: Option<String>,
        /// Imported candidates (class data or character tables).
        #[arg(long)]
        import: Vec<PathBuf>,
        #[arg(long, visible_alias = "primes", default_value_t = 1024)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        degree_bound: u32,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Linear basis of the polynomials of bounded degree vanishing on the
    /// class points.
    Kernel {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 2)]
        degree_bound: u32,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Character table with h(G), r(G), s(G).
    Chartable {
        #[command(flatten)]
        group: GroupArgs,
        /// Print the table of characters irreducible over Q.
        #[arg(long)]
        rational: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Joint Gram of two polynomials at common unramified primes.
    Compare {
        first: String,
        second: String,
        /// Preset applied to both (a5-rational, symmetric, ...).
        #[arg(long)]
        basis: Option<String>,
        #[arg(long)]
        basis_first: Option<String>,
        #[arg(long)]
        basis_second: Option<String>,
        #[command(flatten)]
        sample: SampleArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Bundled groups and representative polynomials.
    Catalog {
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}
