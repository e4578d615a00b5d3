// SPDX-License-Identifier: MIT OR Apache-2.0

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::algo::{AlgoOptions, Algorithm};

#[derive(Debug, Parser)]
#[command(name = "kseg", version, about = "Piecewise-linear k-segmentation of multi-dimensional signals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Segment one CSV signal.
    Segment(SegmentArgs),
    /// Write a synthetic corpus and its manifest.
    Generate(GenerateArgs),
    /// Run several algorithms over a corpus and report relative performance.
    Bench(BenchArgs),
    /// Score predicted change points against the truth.
    Eval(EvalArgs),
}

#[derive(Debug, Args)]
pub struct SegmentArgs {
    /// CSV file with header `time,f0,...`.
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, short)]
    pub k: usize,
    #[arg(long, default_value = "lm-botup")]
    pub algo: Algorithm,
    #[command(flatten)]
    pub options: AlgoOptions,
    /// Result JSON path; stdout when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Write `elapsed_seconds` as null so reruns are byte-identical.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, short = 'o')]
    pub out_dir: PathBuf,
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 50)]
    pub n_min: usize,
    #[arg(long, default_value_t = 2000)]
    pub n_max: usize,
    #[arg(long, default_value_t = 2)]
    pub k_min: usize,
    #[arg(long, default_value_t = 10)]
    pub k_max: usize,
    #[arg(long, default_value_t = 2)]
    pub d_min: usize,
    #[arg(long, default_value_t = 16)]
    pub d_max: usize,
    #[arg(long, default_value_t = 4)]
    pub poly_degree: usize,
    #[arg(long, default_value_t = 0.2)]
    pub nonlinear_scale: f64,
    #[arg(long, default_value_t = 0.5)]
    pub noise_sigma: f64,
    #[arg(long, default_value_t = 0.3)]
    pub trig_amp: f64,
    #[arg(long, default_value_t = 10.0)]
    pub trig_freq_min: f64,
    #[arg(long, default_value_t = 50.0)]
    pub trig_freq_max: f64,
    #[arg(long, default_value_t = 0.005)]
    pub impulse_prob: f64,
    #[arg(long, default_value_t = 2.5)]
    pub impulse_amp: f64,
    #[arg(long, default_value_t = 0.3)]
    pub min_segment_frac: f64,
    /// Disable every perturbation: exact piecewise-linear signals.
    #[arg(long)]
    pub noise_free: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Directory holding `manifest.jsonl`.
    #[arg(long, short)]
    pub corpus: PathBuf,
    #[arg(long, value_delimiter = ',', default_values_t = [Algorithm::LmBotUp, Algorithm::BotUp, Algorithm::SegmentNeighborhood])]
    pub algos: Vec<Algorithm>,
    /// Costs and runtimes are reported relative to this algorithm.
    #[arg(long, default_value = "sn")]
    pub baseline: Algorithm,
    #[command(flatten)]
    pub options: AlgoOptions,
    /// Directory for `runs.csv`, `summary.csv` and `cdf.csv`.
    #[arg(long, short = 'o')]
    pub out_dir: PathBuf,
    /// Worker threads; each job runs single-threaded.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Omit wall-clock columns so reruns are byte-identical.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// JSON with `n` and `change_points`, e.g. a `segment` result.
    #[arg(long, short)]
    pub pred: PathBuf,
    /// JSON with `n` and `change_points`, or a `manifest.jsonl`.
    #[arg(long, short)]
    pub truth: PathBuf,
    /// Manifest entry to use, by `path` or zero-based line index.
    #[arg(long)]
    pub entry: Option<String>,
}
