mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use hurwitz_core::permsearch::DEFAULT_BUDGET;
use hurwitz_core::tiling::Shape;

use report::Format;

#[derive(Parser)]
#[command(name = "hurwitz", version, about = "Ramification data, branched covers and almost-regular families")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Search budget in point assignments.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Worker threads for the permutation search.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Seed for the randomized property commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Genus of ramification data, or of a family with its valid degrees.
    Genus {
        input: String,
        /// Also print the family member of this degree.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Almost-regular families over a Euclidean base.
    Enumerate {
        #[arg(long, value_delimiter = ',', required = true)]
        base: Vec<u32>,
        #[arg(long)]
        genus: u32,
        /// Largest total error.
        #[arg(long)]
        eps: u32,
        /// Print only the number of families.
        #[arg(long)]
        count: bool,
        /// Also print each family's member of this degree when it is valid.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Search for a permutation tuple realizing the data.
    Realize {
        input: String,
        #[arg(long, conflicts_with = "degrees")]
        degree: Option<u32>,
        /// Inclusive range `a..b`; invalid degrees of the family are skipped.
        #[arg(long, value_parser = parse_range)]
        degrees: Option<(u32, u32)>,
    },
    /// Check a tuple against ramification data.
    Verify {
        data: String,
        /// Permutations in cycle notation separated by `|`.
        constellation: String,
    },
    /// Torus tiling with `n` polygons.
    Tile {
        n: u64,
        #[arg(long, default_value = "hexagon")]
        shape: Shape,
        /// Euclidean base; overrides the shape.
        #[arg(long, value_delimiter = ',')]
        base: Option<Vec<u32>>,
    },
    /// Type of `g∘f` for a built-in `g` and a placement of the branch points of `f`.
    Compose {
        input: String,
        /// Preimage point of each branch point, e.g. `inf,1,-1`.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        at: Vec<String>,
        /// `x^2`, `x^3` or `x`.
        #[arg(long, default_value = "x^2")]
        map: String,
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Join two vertices by `k` new edges.
    AddEdges {
        input: String,
        #[arg(long, value_delimiter = ',', required = true)]
        slots: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        entries: Vec<u32>,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Apply the move to this witness as well.
        #[arg(long)]
        witness: Option<String>,
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Split a `[1^k,3^m,2*]` family over `[2,2,2,2]` into two genus-1 halves.
    Split {
        #[arg(required_unless_present_all = ["k", "m"])]
        input: Option<String>,
        #[arg(long, value_delimiter = ',', requires = "m")]
        k: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',', requires = "k")]
        m: Option<Vec<u32>>,
    },
    /// Hamming distances, δ-solutions and local-change rates.
    Stability {
        #[command(subcommand)]
        command: StabilityCommand,
    },
    /// Recompute the family tables, and optionally witnesses and nonexistence checks.
    ReproduceTables {
        #[arg(long)]
        genus: Option<u32>,
        /// Search each family at its smallest valid degree.
        #[arg(long)]
        witnesses: bool,
        /// Run the exhaustive nonexistence checks.
        #[arg(long)]
        nonexistence: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum StabilityCommand {
    /// Relator defects of a tuple.
    Delta {
        /// Permutations in cycle notation separated by `|`.
        tuple: String,
        #[arg(long)]
        degree: usize,
        /// Relators such as `a1^3, a1 a2 a3`.
        #[arg(long, conflicts_with = "base")]
        relators: Option<String>,
        /// Use the triangle-group relators of this base.
        #[arg(long, value_delimiter = ',')]
        base: Option<Vec<u32>>,
        /// Threshold as a fraction `p/q`.
        #[arg(long)]
        delta: String,
    },
    /// Normalized Hamming distance.
    Hamming {
        p: String,
        q: String,
        #[arg(long)]
        degree: usize,
    },
    /// Ratio of changes to size along a sequence, given as `n:k,n:k,...`.
    QuasiLocal {
        #[arg(long)]
        changes: String,
    },
    /// Randomized check of the metric axioms and right invariance.
    HammingAxioms {
        #[arg(long, default_value_t = 1000)]
        trials: u32,
        #[arg(long, default_value_t = 50)]
        max_degree: usize,
    },
    /// Randomized check that products of fixed-point-free involutions pair up their cycles.
    InvolutionParity {
        #[arg(long, default_value_t = 1000)]
        trials: u32,
        #[arg(long, default_value_t = 40)]
        max_degree: usize,
    },
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got '{s}'"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: u32 = a.trim().parse().map_err(|e| format!("range start: {e}"))?;
    let b: u32 = b.trim().parse().map_err(|e| format!("range end: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let status = commands::run(&cli.global, cli.command);
    eprintln!("{{\"wall_time_ms\":{}}}", start.elapsed().as_millis());
    match status {
        Ok(s) => ExitCode::from(s as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::Status::InputError as u8)
        }
    }
}
