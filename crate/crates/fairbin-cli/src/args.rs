use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "fairbin",
    about = "Fairness-aware attribute binning: solvers, metrics, and a benchmark harness",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Bin one attribute of a CSV file (or a synthetic dataset) and write a report.
    ///
    /// Exit status: 0 = feasible binning written, 2 = infeasible, 1 = error.
    Bin(BinArgs),
    /// Sweep synthetic settings and write one aggregated CSV row per
    /// (setting, solver). Rows are flushed as they complete.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Unbiased,
    EpsDp,
    EpsLs,
    EpsDnc,
    EqualSize,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Unbiased => "unbiased",
            Mode::EpsDp => "eps-dp",
            Mode::EpsLs => "eps-ls",
            Mode::EpsDnc => "eps-dnc",
            Mode::EqualSize => "equal-size",
        }
    }

    pub fn needs_eps(&self) -> bool {
        matches!(self, Mode::EpsDp | Mode::EpsLs | Mode::EpsDnc)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WindowModeArg {
    Paper,
    Exhaustive,
}

#[derive(Parser, Debug)]
pub struct BinArgs {
    /// Input CSV path (omit when using --synth).
    pub input: Option<PathBuf>,

    /// Name of the numeric column to bin.
    #[arg(long)]
    pub value_col: Option<String>,

    /// Name of the group-label column.
    #[arg(long)]
    pub group_col: Option<String>,

    /// Synthetic dataset instead of a file: "defaults" or a comma list of
    /// n=, ell=, gap=, sigma=, ratios=equal|P0:P1:..., seed=.
    #[arg(long, conflicts_with = "input")]
    pub synth: Option<String>,

    /// Number of buckets.
    #[arg(long, short)]
    pub k: usize,

    /// Solver.
    #[arg(long, value_enum)]
    pub mode: Mode,

    /// Bias threshold NUM/DEN (required by the eps-* modes).
    #[arg(long)]
    pub eps: Option<String>,

    /// Only allow splits that separate distinct values.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub strict_splits: bool,

    /// Report destination (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Window placement for the eps-ls mode.
    #[arg(long, value_enum, default_value_t = WindowModeArg::Exhaustive)]
    pub ls_window: WindowModeArg,

    /// Cap on local-search combinations (report flags when hit).
    #[arg(long)]
    pub ls_budget: Option<u64>,

    /// Zero the timing fields so identical runs are byte-identical.
    #[arg(long)]
    pub no_timings: bool,
}

#[derive(Parser, Debug)]
pub struct BenchArgs {
    /// Grid CSV destination (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, value_delimiter = ',', default_value = "1000")]
    pub ns: Vec<usize>,

    #[arg(long, value_delimiter = ',', default_value = "3")]
    pub ks: Vec<usize>,

    /// Thresholds for the eps solvers, e.g. "1/100,3/100".
    #[arg(long, value_delimiter = ',', default_value = "3/100")]
    pub eps_list: Vec<String>,

    #[arg(long, value_delimiter = ',', default_value = "100")]
    pub mean_gaps: Vec<f64>,

    /// Group-probability settings: "equal" or colon lists like "0.1:0.9".
    #[arg(long, value_delimiter = ',', default_value = "equal")]
    pub ratios: Vec<String>,

    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub ells: Vec<usize>,

    #[arg(long, default_value_t = 300.0)]
    pub sigma: f64,

    /// Seeded repetitions per setting.
    #[arg(long, default_value_t = 30)]
    pub reps: u32,

    #[arg(long, default_value_t = 1)]
    pub seed_base: u64,

    /// Solvers to run, e.g. "equal-size,unbiased,eps-ls".
    #[arg(long, value_delimiter = ',', value_enum, default_values_t = [Mode::EqualSize, Mode::Unbiased, Mode::EpsDp, Mode::EpsLs, Mode::EpsDnc])]
    pub solvers: Vec<Mode>,

    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub strict_splits: bool,

    #[arg(long, value_enum, default_value_t = WindowModeArg::Exhaustive)]
    pub ls_window: WindowModeArg,

    /// Zero the timing columns so identical runs are byte-identical.
    #[arg(long)]
    pub no_timings: bool,
}
