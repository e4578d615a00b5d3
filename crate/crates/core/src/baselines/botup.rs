// SPDX-License-Identifier: MIT OR Apache-2.0

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::lm::{lm_uniform, LmConfig};
use crate::signal::{KSegment, Signal};
use crate::stats::{fit_boundaries, uniform_change_points, PrefixStats};

#[derive(Debug, Clone, PartialEq)]
pub struct BotUpConfig {
    /// Points per initial cell.
    pub delta: usize,
}

impl Default for BotUpConfig {
    fn default() -> Self {
        Self { delta: 2 }
    }
}

/// Candidate merge of cell `left` with its right neighbour.
///
/// Cells keep their ids in positional order (a merge keeps the left id), so
/// ordering by id is ordering by start index.
#[derive(Debug, Clone, Copy)]
struct Candidate {
    discrepancy: f64,
    left: u32,
    left_version: u32,
    right_version: u32,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    // Reversed so the max-heap pops the smallest (discrepancy, start).
    fn cmp(&self, other: &Self) -> Ordering {
        other.discrepancy.total_cmp(&self.discrepancy).then_with(|| other.left.cmp(&self.left))
    }
}

const NONE: usize = usize::MAX;

/// Greedily merges adjacent cells of the partition `change_points` until `k`
/// segments remain, always taking the merge with the smallest cost
/// discrepancy (ties: leftmost). Returns the surviving change points.
pub fn merge_down(stats: &PrefixStats, change_points: &[usize], k: usize) -> Result<Vec<usize>> {
    let n = stats.len();
    let cells = change_points.len() + 1;
    if cells > u32::MAX as usize {
        return Err(Error::InvalidConfig(format!("{cells} cells exceed the supported count")));
    }
    if k == 0 || k > cells {
        return Err(Error::Infeasible(format!("cannot merge {cells} cells into {k} segments")));
    }
    let start: Vec<usize> = std::iter::once(0).chain(change_points.iter().copied()).collect();
    let mut end: Vec<usize> = change_points.iter().copied().chain(std::iter::once(n)).collect();
    if start.iter().zip(&end).any(|(s, e)| s >= e) || end[cells - 1] != n {
        return Err(Error::InvalidChangePoints(format!("{change_points:?} is not a partition of {n} points")));
    }
    let mut next: Vec<usize> = (1..=cells).map(|i| if i == cells { NONE } else { i }).collect();
    let mut prev: Vec<usize> = (0..cells).map(|i| if i == 0 { NONE } else { i - 1 }).collect();
    let mut version = vec![0u32; cells];
    let mut alive = vec![true; cells];
    let mut cost: Vec<f64> = (0..cells).map(|c| stats.cost_unchecked(start[c], end[c])).collect();

    let candidate =
        |left: usize, right: usize, start: &[usize], end: &[usize], cost: &[f64], version: &[u32]| Candidate {
            discrepancy: stats.cost_unchecked(start[left], end[right]) - cost[left] - cost[right],
            left: left as u32,
            left_version: version[left],
            right_version: version[right],
        };

    let mut heap: BinaryHeap<Candidate> =
        (0..cells - 1).map(|c| candidate(c, c + 1, &start, &end, &cost, &version)).collect();

    let mut remaining = cells;
    while remaining > k {
        let cand = heap.pop().expect("a live merge exists while more than one cell remains");
        let left = cand.left as usize;
        let right = next[left];
        if !alive[left] || right == NONE || version[left] != cand.left_version || version[right] != cand.right_version {
            continue;
        }
        end[left] = end[right];
        cost[left] += cand.discrepancy + cost[right];
        alive[right] = false;
        version[left] += 1;
        next[left] = next[right];
        if next[left] != NONE {
            prev[next[left]] = left;
        }
        remaining -= 1;
        if prev[left] != NONE {
            heap.push(candidate(prev[left], left, &start, &end, &cost, &version));
        }
        if next[left] != NONE {
            heap.push(candidate(left, next[left], &start, &end, &cost, &version));
        }
    }
    let mut out = Vec::with_capacity(k - 1);
    let mut c = 0;
    while next[c] != NONE {
        out.push(end[c]);
        c = next[c];
    }
    Ok(out)
}

/// Bottom-up segmentation from `floor(n / delta)` uniform cells.
pub fn botup(signal: &Signal, stats: &PrefixStats, k: usize, config: &BotUpConfig) -> Result<KSegment> {
    if config.delta == 0 {
        return Err(Error::InvalidConfig("delta must be at least 1".into()));
    }
    let n = signal.len();
    let cells = n / config.delta;
    if k == 0 || cells < k {
        return Err(Error::Infeasible(format!(
            "{n} points give {cells} cells of size {}, fewer than k = {k}",
            config.delta
        )));
    }
    let initial = uniform_change_points(n, cells);
    let cps = merge_down(stats, &initial, k)?;
    fit_boundaries(stats, &cps)
}

/// Number of LM segments used to seed the merge phase of [`lm_botup`].
pub fn lm_botup_cells(n: usize, k: usize) -> usize {
    k.max((5 * k).min(n / 20))
}

/// LM on `min(5k, n/20)` uniform cells, then greedy merging down to `k`.
pub fn lm_botup(
    signal: &Signal,
    stats: &PrefixStats,
    k: usize,
    lm_config: &LmConfig,
    _botup_config: &BotUpConfig,
) -> Result<KSegment> {
    let k_init = lm_botup_cells(signal.len(), k);
    let (cells, _) = lm_uniform(signal, stats, k_init, lm_config)?;
    if k_init == k {
        return Ok(cells);
    }
    let cps = merge_down(stats, &cells.change_points(), k)?;
    fit_boundaries(stats, &cps)
}
