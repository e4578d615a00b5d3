// SPDX-License-Identifier: MIT OR Apache-2.0

use crate::error::{Error, Result};
use crate::signal::{KSegment, Signal};
use crate::stats::{check_feasible, fit_boundaries, PrefixStats};

#[derive(Debug, Clone, PartialEq)]
pub struct WindowConfig {
    /// Full window width in points.
    pub width: usize,
    /// Minimum number of points per segment.
    pub min_size: usize,
}

impl Default for WindowConfig {
    fn default() -> Self {
        Self { width: 50, min_size: 2 }
    }
}

impl WindowConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_size == 0 || self.width < 2 * self.min_size {
            return Err(Error::InvalidConfig(format!(
                "window width {} must be at least twice the minimum segment size {}",
                self.width, self.min_size
            )));
        }
        Ok(())
    }
}

/// Discrepancy score at every candidate split `s` in `min_size..=n - min_size`,
/// using the centred window clipped to the signal.
pub fn window_scores(stats: &PrefixStats, config: &WindowConfig) -> Vec<(usize, f64)> {
    let n = stats.len();
    let half = config.width / 2;
    if n < 2 * config.min_size {
        return Vec::new();
    }
    (config.min_size..=n - config.min_size)
        .map(|s| {
            let lo = s.saturating_sub(half);
            let hi = (s + half).min(n);
            let score = stats.cost_unchecked(lo, hi) - stats.cost_unchecked(lo, s) - stats.cost_unchecked(s, hi);
            (s, score)
        })
        .collect()
}

/// Window sliding: picks the `k - 1` highest-scoring splits, suppressing
/// candidates within `width / 2` of an already chosen split.
pub fn window_sliding(signal: &Signal, stats: &PrefixStats, k: usize, config: &WindowConfig) -> Result<KSegment> {
    config.validate()?;
    let n = signal.len();
    if n <= config.width {
        return Err(Error::Infeasible(format!("signal of {n} points is not longer than the window {}", config.width)));
    }
    check_feasible(n, k, config.min_size)?;
    let mut scores = window_scores(stats, config);
    // highest score first, ties to the smallest index
    scores.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let radius = config.width / 2;
    let mut chosen: Vec<usize> = Vec::with_capacity(k.saturating_sub(1));
    for (s, _) in scores {
        if chosen.len() + 1 == k {
            break;
        }
        if chosen.iter().all(|&c| c.abs_diff(s) > radius) {
            chosen.push(s);
        }
    }
    if chosen.len() + 1 < k {
        return Err(Error::InsufficientPeaks { found: chosen.len(), needed: k - 1 });
    }
    chosen.sort_unstable();
    fit_boundaries(stats, &chosen)
}
