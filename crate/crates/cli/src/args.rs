use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "gpmc", version, about = "Hybrid vertex/edge fault diagnosis under the generalized PMC model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a topology and summarize or export it.
    Topology(TopologyCmd),
    /// Inject a fault pair and print the syndrome it produces.
    Inject(InjectCmd),
    /// Decode a syndrome into the consistent pairs within (t, s).
    Diagnose(DiagnoseCmd),
    /// Compute t_h^e or s_r^v by exhaustive search.
    Diagnosability(DiagnosabilityCmd),
    /// Compare computed hypercube diagnosabilities with their closed forms.
    VerifyTheorems(VerifyCmd),
}

/// Exactly one of: positional words, `--topology` with parameters, or
/// `--edge-list`.
#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    /// Topology words, e.g. `hypercube 3`, `cycle 6` or `random 8 0.5 7`.
    #[arg(value_name = "SPEC")]
    pub spec: Vec<String>,
    /// hypercube, path, cycle, complete or random.
    #[arg(long, value_name = "KIND")]
    pub topology: Option<String>,
    /// Dimension for hypercubes, vertex count otherwise.
    #[arg(long)]
    pub n: Option<usize>,
    /// Edge probability for random graphs.
    #[arg(long)]
    pub p: Option<f64>,
    /// Seed for random graphs.
    #[arg(long, value_name = "SEED")]
    pub graph_seed: Option<u64>,
    /// Read the graph from an edge-list file.
    #[arg(long, value_name = "PATH")]
    pub edge_list: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Include wall-clock times in the report.
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Local,
    Full,
    Literal,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    /// Search strategy.
    #[arg(long, value_enum, default_value_t = StrategyArg::Local)]
    pub strategy: StrategyArg,
    /// Cross-check with full enumeration and no symmetry shortcuts.
    #[arg(long)]
    pub audit_full_enumeration: bool,
    /// Worker threads.
    #[arg(long, env = "GPMC_JOBS", default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AdversaryArg {
    AllPass,
    AllFail,
    Random,
}

#[derive(Debug, Clone, Args)]
pub struct FaultArgs {
    /// Comma-separated vertex ids, e.g. `0,3`.
    #[arg(long, value_name = "IDS", conflicts_with_all = ["random_vertices", "random_edges"])]
    pub faulty_vertices: Option<String>,
    /// Comma-separated edges, e.g. `3-7,0-1`.
    #[arg(long, value_name = "EDGES", conflicts_with_all = ["random_vertices", "random_edges"])]
    pub faulty_edges: Option<String>,
    /// Draw this many faulty vertices at random.
    #[arg(long, value_name = "K")]
    pub random_vertices: Option<usize>,
    /// Draw this many faulty edges at random.
    #[arg(long, value_name = "M")]
    pub random_edges: Option<usize>,
    /// Seed for random fault pairs.
    #[arg(long, default_value_t = 0)]
    pub fault_seed: u64,
    /// How faulty testers answer.
    #[arg(long, value_enum, default_value_t = AdversaryArg::AllFail)]
    pub adversary: AdversaryArg,
    /// Seed for the random adversary.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct TopologyCmd {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Print the graph in this format instead of a summary.
    #[arg(long, value_enum)]
    pub export: Option<ExportFormat>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Dot,
    EdgeList,
}

#[derive(Debug, Args)]
pub struct InjectCmd {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub faults: FaultArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DiagnoseCmd {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub faults: FaultArgs,
    /// Decode this syndrome (JSON triples or an `inject` report) instead of
    /// injecting faults.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["faulty_vertices", "faulty_edges", "random_vertices", "random_edges"])]
    pub syndrome: Option<PathBuf>,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub s: usize,
    /// Candidates listed when ambiguous; the count is always exact.
    #[arg(long, default_value_t = gpmc::diagnosis::DEFAULT_CANDIDATE_CAP)]
    pub cap: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("level").required(true).args(["h", "r"])))]
pub struct DiagnosabilityCmd {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Edge-restricted: at most h faulty edges, maximize faulty vertices.
    #[arg(long, visible_alias = "edge-restricted")]
    pub h: Option<usize>,
    /// Vertex-restricted: at most r faulty vertices, maximize faulty edges.
    #[arg(long, visible_alias = "vertex-restricted")]
    pub r: Option<usize>,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyCmd {
    #[arg(long, default_value_t = 2)]
    pub n_min: usize,
    /// Dimensions above 4 need --audit-full-enumeration.
    #[arg(long, default_value_t = 4)]
    pub n_max: usize,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}
