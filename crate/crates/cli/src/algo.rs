// SPDX-License-Identifier: MIT OR Apache-2.0

//! Algorithm registry shared by the `segment` and `bench` commands.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, ValueEnum};
use kseg::{
    binseg, botup, build_prefix_stats, ksegment_cost, lm_botup, lm_multi_init, lm_uniform, segment_neighborhood,
    window_sliding, BotUpConfig, KSegment, LmConfig, Signal, WindowConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Algorithm {
    #[value(name = "lm")]
    Lm,
    #[value(name = "lm-20inits")]
    LmMultiInit,
    #[value(name = "lm-botup")]
    LmBotUp,
    #[value(name = "botup")]
    BotUp,
    #[value(name = "binseg")]
    BinSeg,
    #[value(name = "ws")]
    Window,
    #[value(name = "sn")]
    SegmentNeighborhood,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Lm => "lm",
            Algorithm::LmMultiInit => "lm-20inits",
            Algorithm::LmBotUp => "lm-botup",
            Algorithm::BotUp => "botup",
            Algorithm::BinSeg => "binseg",
            Algorithm::Window => "ws",
            Algorithm::SegmentNeighborhood => "sn",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Algorithm as ValueEnum>::from_str(s, false)
    }
}

/// Tuning knobs; each algorithm reads the ones it understands.
#[derive(Debug, Clone, PartialEq, Args)]
pub struct AlgoOptions {
    /// Minimum points per segment.
    #[arg(long, default_value_t = 2)]
    pub gamma: usize,
    /// Relative improvement below which LM stops.
    #[arg(long, default_value_t = 1e-6)]
    pub epsilon: f64,
    /// Maximum LM iterations.
    #[arg(long, default_value_t = 30)]
    pub rmax: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Initial cell size for BotUp.
    #[arg(long, default_value_t = 2)]
    pub delta: usize,
    /// Window width for WS.
    #[arg(long, default_value_t = 50)]
    pub window: usize,
    /// Number of initialisations for lm-20inits.
    #[arg(long, default_value_t = 20)]
    pub q: usize,
}

impl Default for AlgoOptions {
    fn default() -> Self {
        Self { gamma: 2, epsilon: 1e-6, rmax: 30, seed: 0, delta: 2, window: 50, q: 20 }
    }
}

impl AlgoOptions {
    fn lm(&self) -> LmConfig {
        LmConfig { max_iter: self.rmax, min_size: self.gamma, tol: self.epsilon, seed: self.seed }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub segmentation: KSegment,
    pub cost: f64,
    pub seconds: f64,
}

/// Runs one algorithm. The timed region covers the prefix-sum build and the
/// segmentation itself.
pub fn run(algo: Algorithm, signal: &Signal, k: usize, opts: &AlgoOptions) -> kseg::Result<Outcome> {
    let start = Instant::now();
    let stats = build_prefix_stats(signal);
    let lm = opts.lm();
    let segmentation = match algo {
        Algorithm::Lm => lm_uniform(signal, &stats, k, &lm)?.0,
        Algorithm::LmMultiInit => lm_multi_init(signal, &stats, k, opts.q, &lm)?.0,
        Algorithm::LmBotUp => lm_botup(signal, &stats, k, &lm, &BotUpConfig { delta: opts.delta })?,
        Algorithm::BotUp => botup(signal, &stats, k, &BotUpConfig { delta: opts.delta })?,
        Algorithm::BinSeg => binseg(signal, &stats, k, opts.gamma)?,
        Algorithm::Window => {
            window_sliding(signal, &stats, k, &WindowConfig { width: opts.window, min_size: opts.gamma })?
        }
        Algorithm::SegmentNeighborhood => segment_neighborhood(signal, &stats, k, opts.gamma)?,
    };
    let seconds = start.elapsed().as_secs_f64();
    let cost = ksegment_cost(signal, &segmentation)?;
    Ok(Outcome { segmentation, cost, seconds })
}
