// SPDX-License-Identifier: MIT OR Apache-2.0

use crate::error::{Error, Result};
use crate::signal::{KSegment, Signal};
use crate::stats::{check_feasible, fit_boundaries, PrefixStats};

#[derive(Debug, Clone, Copy)]
struct Piece {
    start: usize,
    end: usize,
    /// Best (gain, split) inside the piece, if it can be split at all.
    best: Option<(f64, usize)>,
}

fn best_split(stats: &PrefixStats, start: usize, end: usize, min_size: usize) -> Option<(f64, usize)> {
    if end - start < 2 * min_size {
        return None;
    }
    let whole = stats.cost_unchecked(start, end);
    let mut best = (f64::NEG_INFINITY, start + min_size);
    for s in start + min_size..=end - min_size {
        let gain = whole - stats.cost_unchecked(start, s) - stats.cost_unchecked(s, end);
        if gain > best.0 {
            best = (gain, s);
        }
    }
    Some(best)
}

/// Binary segmentation: repeatedly applies the single split with the largest
/// cost reduction over all current segments until `k` segments exist.
pub fn binseg(signal: &Signal, stats: &PrefixStats, k: usize, min_size: usize) -> Result<KSegment> {
    let n = signal.len();
    check_feasible(n, k, min_size)?;
    let mut pieces = vec![Piece { start: 0, end: n, best: best_split(stats, 0, n, min_size) }];
    while pieces.len() < k {
        let mut pick: Option<(usize, f64, usize)> = None;
        for (idx, piece) in pieces.iter().enumerate() {
            if let Some((gain, s)) = piece.best {
                // pieces are ordered, so the first maximum is also the leftmost split
                if pick.is_none_or(|(_, g, _)| gain > g) {
                    pick = Some((idx, gain, s));
                }
            }
        }
        let Some((idx, _, s)) = pick else {
            return Err(Error::Infeasible(format!(
                "greedy splitting stalled at {} of {k} segments with minimum size {min_size}",
                pieces.len()
            )));
        };
        let Piece { start, end, .. } = pieces[idx];
        pieces[idx] = Piece { start, end: s, best: best_split(stats, start, s, min_size) };
        pieces.insert(idx + 1, Piece { start: s, end, best: best_split(stats, s, end, min_size) });
    }
    let cps: Vec<usize> = pieces[..pieces.len() - 1].iter().map(|p| p.end).collect();
    fit_boundaries(stats, &cps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::build_prefix_stats;

    #[test]
    fn k1_is_single_mean() {
        let s = Signal::from_rows(&(0..12).map(|i| vec![(i * i) as f64]).collect::<Vec<_>>()).unwrap();
        let p = build_prefix_stats(&s);
        let out = binseg(&s, &p, 1, 2).unwrap();
        assert_eq!(out.k(), 1);
        assert_eq!(out.segments()[0], p.fit(0, 12).unwrap());
    }

    #[test]
    fn k2_matches_exhaustive_sweep() {
        let rows: Vec<Vec<f64>> = (0..30).map(|i| vec![((i * 7919) % 13) as f64, (i % 5) as f64]).collect();
        let s = Signal::from_rows(&rows).unwrap();
        let p = build_prefix_stats(&s);
        let oracle = (3..=27)
            .map(|b| (b, p.cost(0, b).unwrap() + p.cost(b, 30).unwrap()))
            .fold((0, f64::INFINITY), |a, x| if x.1 < a.1 { x } else { a });
        let out = binseg(&s, &p, 2, 3).unwrap();
        assert_eq!(out.change_points(), vec![oracle.0]);
    }

    #[test]
    fn stalls_reported_as_infeasible() {
        // 6 points, min size 2: any first split leaves pieces of 2..4; the
        // leftmost-best split at 3 leaves two unsplittable halves.
        let rows: Vec<Vec<f64>> = vec![vec![0.0], vec![0.0], vec![0.0], vec![9.0], vec![9.0], vec![9.0]];
        let s = Signal::from_rows(&rows).unwrap();
        let p = build_prefix_stats(&s);
        assert_eq!(binseg(&s, &p, 2, 2).unwrap().change_points(), vec![3]);
        assert!(matches!(binseg(&s, &p, 3, 2), Err(Error::Infeasible(_))));
        assert!(matches!(binseg(&s, &p, 4, 2), Err(Error::Infeasible(_))));
    }
}
