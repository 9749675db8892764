use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::Format;

#[derive(Debug, Parser)]
#[command(
    name = "tsmix",
    version,
    about = "Simulate two-armed adaptive experiments and tabulate their error rates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one experiment configuration.
    Run(RunArgs),
    /// Run every configuration of a JSON grid file.
    Sweep(SweepArgs),
    /// Mean posterior probability of a small difference over time (TS PostDiff).
    PhiCurve(PhiCurveArgs),
    /// Uniform-allocation sample sizes for a list of effect sizes.
    PowerTable(PowerTableArgs),
    /// Rerun one of the built-in result tables.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
pub struct PolicyArgs {
    /// uniform, ts, greedy, epsilon-greedy, epsilon-ts, declining-epsilon-greedy,
    /// declining-epsilon-ts, top-two-ts, ts-postdiff or ts-probclip.
    #[arg(long)]
    pub policy: Option<String>,
    /// TS PostDiff threshold.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// Top-two exploitation probability.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub epsilon: Option<f64>,
    /// Clipping ceiling for TS ProbClip.
    #[arg(long, allow_hyphen_values = true)]
    pub p_max: Option<f64>,
    /// Declining schedule: `inverse-power:SCALE:EXPONENT` or `exponential:INITIAL:DECAY`.
    #[arg(long)]
    pub schedule: Option<String>,
}

impl PolicyArgs {
    pub fn any_set(&self) -> bool {
        self.policy.is_some()
            || self.c.is_some()
            || self.beta.is_some()
            || self.epsilon.is_some()
            || self.p_max.is_some()
            || self.schedule.is_some()
    }
}

#[derive(Debug, Args)]
pub struct ExecArgs {
    /// Simulations per configuration.
    #[arg(long)]
    pub sims: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads; defaults to one per core.
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write the table here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub policy: PolicyArgs,
    /// JSON experiment configuration; other flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub effect_size: Option<f64>,
    /// Participants per simulated experiment.
    #[arg(long)]
    pub n: Option<u64>,
    /// Significance level of the Wald test.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[command(flatten)]
    pub exec: ExecArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Write per-step allocations of every simulation to this CSV file.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// JSON array of experiment configurations.
    pub grid: PathBuf,
    #[command(flatten)]
    pub exec: ExecArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PhiCurveArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub c: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub effect_size: f64,
    #[arg(long)]
    pub n: u64,
    /// Steps at which to evaluate; defaults to 1 and every twentieth of n.
    #[arg(long, value_delimiter = ',')]
    pub checkpoints: Option<Vec<u64>>,
    /// Posterior pairs per evaluation.
    #[arg(long, default_value_t = tsmix_core::harness::DEFAULT_PHI_SAMPLES)]
    pub phi_samples: u64,
    #[command(flatten)]
    pub exec: ExecArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PowerTableArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub effect_sizes: Vec<f64>,
    #[arg(long, default_value_t = tsmix_core::analysis::DEFAULT_ALPHA)]
    pub alpha: f64,
    #[arg(long, default_value_t = tsmix_core::analysis::DEFAULT_POWER)]
    pub power: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableId {
    FixedDec,
    ChoosingC,
    MoreCEps,
    Probclip,
    Top2,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(value_enum)]
    pub table: TableId,
    #[command(flatten)]
    pub exec: ExecArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}
