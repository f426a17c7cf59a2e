use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gpa_core::analysis::DegreeMode;
use gpa_core::experiments::SweepParam;
use gpa_core::io::GraphFormat;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "gpa-lab", version, about = "Preferential attachment graphs with tunable clustering")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Base random seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory for output files.
    #[arg(long, global = true, default_value = ".")]
    pub out_dir: PathBuf,
    /// Graph file format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
    /// JSON file with command settings; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Text,
    Binary,
}

impl From<FormatArg> for GraphFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => GraphFormat::Text,
            FormatArg::Binary => GraphFormat::Binary,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Multigraph,
    Simple,
}

impl From<ModeArg> for DegreeMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Multigraph => DegreeMode::Multigraph,
            ModeArg::Simple => DegreeMode::Simple,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
pub enum ParamArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "D", alias = "d")]
    D,
}

impl From<ParamArg> for SweepParam {
    fn from(p: ParamArg) -> Self {
        match p {
            ParamArg::A => SweepParam::A,
            ParamArg::D => SweepParam::D,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize, serde::Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum ValidateMode {
    Transitions,
    Pairs,
    Concentration,
    Wn,
}

/// Model parameters shared by several subcommands. Field names match the
/// config file keys.
#[derive(Debug, Default, Args, Serialize)]
pub struct ModelArgs {
    /// Edges added per step.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    /// Degree-increment slope A.
    #[arg(long = "A")]
    #[serde(rename = "A", skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    /// Triangle-step probability D.
    #[arg(long = "D")]
    #[serde(rename = "D", skip_serializing_if = "Option::is_none")]
    pub d: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a graph and write it with a JSON sidecar.
    Generate(GenerateArgs),
    /// Degree and clustering statistics of a graph file.
    Analyze(AnalyzeArgs),
    /// Closed-form degree and clustering predictions.
    Theory(TheoryArgs),
    /// Average clustering across a grid of A or D values.
    Sweep(SweepArgs),
    /// Statistical checks of the generator.
    Validate(ValidateArgs),
    /// Weak or strong transitivity of a parameter set.
    Classify(ClassifyArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct GenerateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// Number of vertices.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Base name of the output files.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct AnalyzeArgs {
    /// Graph file (text edge list or binary).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// Degree used to group vertices for C(d).
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_mode")]
    pub degree_mode: Option<ModeArg>,
    /// Smallest N[d] for which C(d) is written.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_count: Option<u64>,
}

fn ser_mode<S: serde::Serializer>(m: &Option<ModeArg>, s: S) -> Result<S::Ok, S::Error> {
    m.map(DegreeMode::from).serialize(s)
}

fn ser_param<S: serde::Serializer>(p: &Option<ParamArg>, s: S) -> Result<S::Ok, S::Error> {
    p.map(SweepParam::from).serialize(s)
}

#[derive(Debug, Args, Serialize)]
pub struct TheoryArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// Largest degree tabulated.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_max: Option<usize>,
    /// Relative tolerance of the clustering series.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct SweepArgs {
    /// Parameter varied across the grid.
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_param")]
    pub param: Option<ParamArg>,
    /// Comma-separated grid values.
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replicates: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct ValidateArgs {
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<ValidateMode>,
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// Single-step repetitions (transitions, pairs).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    /// Size of the graph the steps start from (transitions, pairs);
    /// defaults to the seed graph.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub start_n: Option<usize>,
    /// Graph size (concentration).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Independent replicates (concentration, wn).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seeds: Option<usize>,
    /// Comma-separated graph sizes (wn).
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_grid: Option<Vec<usize>>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    /// Check degrees up to this value instead of the default cutoff.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_limit: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_max: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cv_n_max: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cv_t_max: Option<f64>,
    /// Allowed deviation of the W_n slope from max(1, 2A).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope_tol: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct ClassifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
}
