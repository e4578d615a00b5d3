// SPDX-License-Identifier: MIT OR Apache-2.0

use crate::error::Result;
use crate::par;
use crate::signal::{KSegment, Signal};
use crate::stats::{check_feasible, fit_boundaries, PrefixStats};

/// Optimal change points and their total cost, via the segment neighbourhood
/// recursion `C(j, m) = min_s C(s, m - 1) + cost(s, j)`.
///
/// Every row's inner minimisation is independent across `j`, so the row is
/// evaluated with [`par::map_range`]; the scan over `s` is always ascending
/// with a strict comparison, which keeps the smallest minimising boundary.
pub fn segment_neighborhood_cost(stats: &PrefixStats, k: usize, min_size: usize) -> Result<(Vec<usize>, f64)> {
    let n = stats.len();
    check_feasible(n, k, min_size)?;
    // best[j] = optimal cost of the first j points in `m` segments.
    let mut best = vec![f64::INFINITY; n + 1];
    for (j, c) in best.iter_mut().enumerate().take(n - (k - 1) * min_size + 1).skip(min_size) {
        *c = stats.cost_unchecked(0, j);
    }
    let mut back: Vec<Vec<usize>> = Vec::with_capacity(k.saturating_sub(1));
    for m in 2..=k {
        let lo = m * min_size;
        let hi = n - (k - m) * min_size;
        let prev = &best;
        let row = par::map_range(lo..hi + 1, 32, |j| {
            let first = (m - 1) * min_size;
            let mut arg = first;
            let mut val = f64::INFINITY;
            for (s, &head) in prev.iter().enumerate().take(j - min_size + 1).skip(first) {
                let v = head + stats.cost_unchecked(s, j);
                if v < val {
                    val = v;
                    arg = s;
                }
            }
            (val, arg)
        });
        let mut next = vec![f64::INFINITY; n + 1];
        let mut ptr = vec![0usize; n + 1];
        for (offset, (val, arg)) in row.into_iter().enumerate() {
            next[lo + offset] = val;
            ptr[lo + offset] = arg;
        }
        best = next;
        back.push(ptr);
    }
    let total = best[n];
    let mut cps = Vec::with_capacity(k - 1);
    let mut j = n;
    for ptr in back.iter().rev() {
        j = ptr[j];
        cps.push(j);
    }
    cps.reverse();
    Ok((cps, total))
}

/// Globally optimal k-segmentation with segments of at least `min_size` points.
pub fn segment_neighborhood(signal: &Signal, stats: &PrefixStats, k: usize, min_size: usize) -> Result<KSegment> {
    check_feasible(signal.len(), k, min_size)?;
    let (cps, _) = segment_neighborhood_cost(stats, k, min_size)?;
    fit_boundaries(stats, &cps)
}
