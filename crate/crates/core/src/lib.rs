// SPDX-License-Identifier: MIT OR Apache-2.0

//! Offline k-segmentation of multi-dimensional, time-indexed signals into
//! piecewise-linear segments.
//!
//! The crate provides the LM alternating-refinement heuristic and its
//! variants, bottom-up, binary-segmentation, window-sliding and exact
//! dynamic-programming baselines, covering and Rand-index metrics, and a
//! seeded synthetic signal generator.

#![forbid(unsafe_code)]

pub mod baselines;
pub mod error;
pub mod lm;
pub mod metrics;
pub mod par;
pub mod signal;
pub mod stats;
pub mod synth;

pub use baselines::{binseg, botup, lm_botup, segment_neighborhood, window_sliding, BotUpConfig, WindowConfig};
pub use error::{Error, Result};
pub use lm::{lm_multi_init, lm_refine, lm_uniform, LmConfig, LmTrace};
pub use metrics::{covering_score, deficit_cdf, rand_index, ChangePointSet};
pub use signal::{KSegment, LinearSegment, Signal};
pub use stats::{build_prefix_stats, fit_1segment, fit_boundaries, interval_cost, ksegment_cost, PrefixStats};
pub use synth::{generate, generate_corpus, CorpusItem, SynthSpec};
