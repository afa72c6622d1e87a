use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use ic_feedback::{parse_rational, Rational};

#[derive(Debug, Parser)]
#[command(name = "ic-feedback", version, about = "Interference channel with rate-limited feedback: capacity regions, simulation and constant-gap sweeps")]
pub struct Cli {
    /// JSON object whose keys mirror long flags; flags on the command line win.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Linear deterministic model.
    Ldic {
        #[command(subcommand)]
        command: LdicCommand,
    },
    /// Symmetric Gaussian model.
    Gaussian {
        #[command(subcommand)]
        command: GaussianCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum LdicCommand {
    /// Capacity region, its vertices and the maximum sum rate.
    Region(RegionArgs),
    /// Normalized symmetric sum-rate capacity over alpha for several beta.
    SumrateSweep(SumrateSweepArgs),
    /// Bit-exact run of the feedback coding scheme.
    Simulate(SimulateArgs),
}

#[derive(Debug, Subcommand)]
pub enum GaussianCommand {
    /// Outer bounds, achievable sum rate and gap at one operating point.
    Bounds(BoundsArgs),
    /// Gap between outer bound and achievable sum rate along an INR axis.
    GapSweep(GapSweepArgs),
}

pub fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("not a rational number: {s:?}"))
}

fn nonneg_rational(s: &str) -> Result<Rational, String> {
    let r = rational(s)?;
    if r < Rational::from_integer(0) {
        return Err(format!("must be nonnegative: {s}"));
    }
    Ok(r)
}

fn nonneg_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
        _ => Err(format!("must be a finite nonnegative number: {s}")),
    }
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    #[arg(long, required_unless_present = "grid")]
    pub n11: Option<usize>,
    #[arg(long, required_unless_present = "grid")]
    pub n22: Option<usize>,
    #[arg(long, required_unless_present = "grid")]
    pub n12: Option<usize>,
    #[arg(long, required_unless_present = "grid")]
    pub n21: Option<usize>,
    /// Feedback capacity from receiver 1, e.g. `1`, `0.5` or `3/2`.
    #[arg(long, value_parser = nonneg_rational, default_value = "0")]
    pub cfb1: Rational,
    #[arg(long, value_parser = nonneg_rational, default_value = "0")]
    pub cfb2: Rational,
    /// Also check the region against the scheme's achievable region.
    #[arg(long)]
    pub check_appendix_b: bool,
    /// CSV of `n11,n22,n12,n21,cfb1,cfb2` rows to process instead of flags.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["n11", "n22", "n12", "n21"])]
    pub grid: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SumrateSweepArgs {
    #[arg(long, value_parser = nonneg_rational, default_value = "0")]
    pub alpha_start: Rational,
    #[arg(long, value_parser = nonneg_rational, default_value = "3")]
    pub alpha_stop: Rational,
    #[arg(long, value_parser = nonneg_rational, default_value = "0.01")]
    pub alpha_step: Rational,
    /// Comma-separated feedback ratios; 10 stands in for unlimited feedback.
    #[arg(long, value_parser = nonneg_rational, value_delimiter = ',', default_value = "0,0.125,10")]
    pub beta: Vec<Rational>,
    /// CSV destination; stdout when absent.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Write a gnuplot script that draws the CSV.
    #[arg(long, value_name = "FILE", requires = "out")]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Run the asymmetric (4, 4, 2, 2, 1, 1) reference schedule.
    #[arg(long, conflicts_with_all = ["n", "m", "cfb"])]
    pub motivating: bool,
    /// Direct gain of the symmetric channel.
    #[arg(long, required_unless_present = "motivating")]
    pub n: Option<usize>,
    /// Cross gain of the symmetric channel.
    #[arg(long, required_unless_present = "motivating")]
    pub m: Option<usize>,
    /// Feedback capacity of each link (bits per use).
    #[arg(long, default_value_t = 0)]
    pub cfb: i64,
    #[arg(long, default_value_t = 50)]
    pub blocks: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Send all-zero messages instead of seeded random bits.
    #[arg(long)]
    pub zero_messages: bool,
    /// Also solve each receiver's whole system over GF(2) and compare.
    #[arg(long)]
    pub cross_check: bool,
    /// Print every block's inputs, outputs, feedback and decoded bits.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub snr_db: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub inr_db: f64,
    #[arg(long, value_parser = nonneg_f64, default_value = "0")]
    pub cfb1: f64,
    #[arg(long, value_parser = nonneg_f64, default_value = "0")]
    pub cfb2: f64,
    /// Grid size of the correlation search in the full outer bound.
    #[arg(long, default_value_t = ic_feedback::gaussian::bounds::DEFAULT_RHO_STEPS)]
    pub rho_steps: usize,
    /// Also print the full outer region at this correlation.
    #[arg(long)]
    pub rho: Option<f64>,
    /// Search power splits numerically on top of the fixed ones.
    #[arg(long)]
    pub optimize: bool,
}

#[derive(Debug, Args)]
pub struct GapSweepArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub snr_db: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = -10.0)]
    pub inr_start_db: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 160.0)]
    pub inr_stop_db: f64,
    #[arg(long, default_value_t = 2.0)]
    pub inr_step_db: f64,
    /// Total feedback, split evenly unless `--cfb1`/`--cfb2` are given.
    #[arg(long, value_parser = nonneg_f64, default_value = "0", conflicts_with_all = ["cfb1", "cfb2"])]
    pub cfb: f64,
    #[arg(long, value_parser = nonneg_f64, requires = "cfb2")]
    pub cfb1: Option<f64>,
    #[arg(long, value_parser = nonneg_f64, requires = "cfb1")]
    pub cfb2: Option<f64>,
    #[arg(long)]
    pub optimize: bool,
    /// Grid points per power coordinate in the optimizer.
    #[arg(long, default_value_t = ic_feedback::gaussian::achievable::DEFAULT_GRID_STEPS)]
    pub grid_steps: usize,
    /// Fail (exit 1) when the largest gap exceeds this value.
    #[arg(long)]
    pub max_gap: Option<f64>,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, value_name = "FILE", requires = "out")]
    pub plot: Option<PathBuf>,
}
