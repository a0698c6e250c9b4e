//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "hfree", version, about = "Constructions, exact search and bounds for H-free subfamilies")]
pub struct Cli {
    /// Write the artifact here (and its manifest to `<out>.manifest.json`)
    /// instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a family (or a design) and emit it as JSON.
    #[command(subcommand)]
    Construct(Construct),
    /// Report the Venn profile and intersection structure of k edges.
    Analyze(Analyze),
    /// Emit a certificate for a structural claim.
    #[command(subcommand)]
    Verify(Verify),
    /// Exact search and extraction algorithms.
    #[command(subcommand)]
    Oracle(Oracle),
    /// Evaluate bound formulas and classify parameter regions.
    #[command(subcommand)]
    Bounds(Bounds),
    /// Conversions between the b-, a- and d-vectors, and binomials.
    #[command(subcommand)]
    Compute(Compute),
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// m edges of size r pairwise meeting in a common core.
    Sunflower {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        core: usize,
    },
    /// The F_m^{d} construction.
    Fdk {
        #[arg(long)]
        m: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<u64>,
    },
    /// Edge i = the L-subsets of [m] containing i.
    Levelint {
        #[arg(long)]
        m: usize,
        #[arg(long = "l")]
        level: usize,
    },
    /// Edge-wise disjoint union of two families of equal size.
    Merge {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Add fresh private vertices to every edge.
    Pad {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        extra: usize,
    },
    /// The first `count` edges in canonical order.
    Sub {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        count: usize,
    },
    /// The Miquelian inversive plane of odd prime order q.
    Plane {
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value_t = PlaneEmit::Design)]
        emit: PlaneEmit,
    },
    /// Seeded random family with distinct edges.
    Random {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        vertices: u32,
        #[arg(long, default_value_t = 1)]
        min_size: usize,
        #[arg(long)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PlaneEmit {
    Design,
    Dual,
}

#[derive(Debug, Args)]
pub struct Analyze {
    #[arg(long)]
    pub family: PathBuf,
    /// 0-based edge indices; defaults to the first `k` edges.
    #[arg(long, value_delimiter = ',')]
    pub subset: Option<Vec<usize>>,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    /// Every k-subset of the family is a copy of H(b).
    Pattern {
        #[arg(long)]
        family: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<u64>,
    },
    /// Every three points lie on exactly one circle.
    Design {
        #[arg(long, conflicts_with = "design")]
        q: Option<u32>,
        #[arg(long)]
        design: Option<PathBuf>,
        /// Remove this circle (0-based) before checking.
        #[arg(long)]
        delete_circle: Option<usize>,
    },
    /// Exact binomial identities.
    Identity(Identity),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Which {
    Vdm,
    Bdw,
}

#[derive(Debug, Args)]
pub struct Identity {
    #[arg(long, value_enum)]
    pub which: Which,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub k_min: Option<usize>,
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long)]
    pub m_max: Option<usize>,
    #[arg(long)]
    pub x: Option<i64>,
    #[arg(long)]
    pub y: Option<i64>,
    #[arg(long)]
    pub z: Option<i64>,
    /// Sweep bound for the convolution identity.
    #[arg(long)]
    pub max: Option<i64>,
}

#[derive(Debug, Args, Clone)]
pub struct PatternArgs {
    /// Forbid copies of H(b).
    #[arg(long, value_delimiter = ',')]
    pub b: Option<Vec<u64>>,
    /// Forbid q-sunflowers.
    #[arg(long)]
    pub sunflower: Option<usize>,
    /// Forbid copies of the hypergraph in this family file.
    #[arg(long)]
    pub pattern: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Oracle {
    /// Largest pattern-free subfamily, exactly.
    Ex {
        #[arg(long)]
        family: PathBuf,
        #[command(flatten)]
        pattern: PatternArgs,
    },
    /// Constructive extraction.
    Extract(Extract),
    /// Exact independence number against the averaging bound.
    Spencer(Spencer),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Algo {
    Sunflower,
    Hfree,
    Homog,
}

#[derive(Debug, Args)]
pub struct Extract {
    #[arg(long, value_enum)]
    pub algo: Algo,
    #[arg(long)]
    pub family: PathBuf,
    /// Forbidden hypergraphs (for `hfree`), one family file each.
    #[arg(long)]
    pub pattern: Vec<PathBuf>,
    /// Predicate arity (for `homog`).
    #[arg(long, default_value_t = 2)]
    pub arity: usize,
    /// `empty` (the chosen edges have empty common intersection) or
    /// `size=N` (their common intersection has exactly N vertices).
    #[arg(long, default_value = "empty")]
    pub predicate: String,
}

#[derive(Debug, Args)]
pub struct Spencer {
    #[arg(long)]
    pub family: Option<PathBuf>,
    #[command(flatten)]
    pub pattern: PatternArgs,
    /// Random conflict hypergraph on this many vertices.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// Number of random conflicts.
    #[arg(long)]
    pub edges: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Bounds {
    /// Every applicable bound at (b, m).
    Eval {
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<u64>,
        #[arg(long)]
        m: usize,
    },
    /// Region label of (b1, b2, 1) at m.
    Classify {
        #[arg(long)]
        b1: u64,
        #[arg(long)]
        b2: u64,
        #[arg(long)]
        m: usize,
    },
    /// CSV of region labels over a log-spaced (b1, b2) grid.
    Region {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "1:10000")]
        b1: String,
        #[arg(long, default_value = "1:10000")]
        b2: String,
        #[arg(long, default_value_t = 1.25)]
        log_step: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum Compute {
    Dfromb {
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<u64>,
        #[arg(long)]
        m: usize,
    },
    Afromd {
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<u64>,
        #[arg(long)]
        m: usize,
    },
    Bfroma {
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
    },
    Binom {
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
        #[arg(long, allow_hyphen_values = true)]
        y: i64,
    },
}
