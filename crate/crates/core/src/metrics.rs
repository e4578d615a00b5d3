// SPDX-License-Identifier: MIT OR Apache-2.0

//! Agreement between a predicted and a true segmentation.

use crate::error::{Error, Result};

/// Sorted interior change points; the implicit outer bounds are `0` and `n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChangePointSet {
    boundaries: Vec<usize>,
}

impl ChangePointSet {
    pub fn new(boundaries: Vec<usize>) -> Result<Self> {
        if boundaries.first() == Some(&0) {
            return Err(Error::InvalidChangePoints("change point 0 is not interior".into()));
        }
        if boundaries.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidChangePoints(format!("{boundaries:?} is not strictly increasing")));
        }
        Ok(Self { boundaries })
    }

    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    pub fn check(&self, n: usize) -> Result<()> {
        match self.boundaries.last() {
            Some(&b) if b >= n => Err(Error::InvalidChangePoints(format!("change point {b} is not inside (0, {n})"))),
            _ => Ok(()),
        }
    }

    /// Block lengths of the partition of `0..n`.
    pub fn blocks(&self, n: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let starts = std::iter::once(0).chain(self.boundaries.iter().copied());
        let ends = self.boundaries.iter().copied().chain(std::iter::once(n));
        starts.zip(ends)
    }
}

/// Overlap sizes of every intersecting (true block, predicted block) pair, as
/// `(true_index, pred_index, overlap)`, in sweep order.
fn overlaps(truth: &ChangePointSet, pred: &ChangePointSet, n: usize) -> Vec<(usize, usize, usize)> {
    let a: Vec<_> = truth.blocks(n).collect();
    let b: Vec<_> = pred.blocks(n).collect();
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    while i < a.len() && j < b.len() {
        let lo = a[i].0.max(b[j].0);
        let hi = a[i].1.min(b[j].1);
        if hi > lo {
            out.push((i, j, hi - lo));
        }
        if a[i].1 <= b[j].1 {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}

/// Covering score: size-weighted mean, over true blocks, of the best Jaccard
/// index against any predicted block.
pub fn covering_score(truth: &ChangePointSet, pred: &ChangePointSet, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidChangePoints("signal length must be positive".into()));
    }
    truth.check(n)?;
    pred.check(n)?;
    let a: Vec<_> = truth.blocks(n).collect();
    let b: Vec<_> = pred.blocks(n).collect();
    let mut best = vec![0.0f64; a.len()];
    for (i, j, inter) in overlaps(truth, pred, n) {
        let union = (a[i].1 - a[i].0) + (b[j].1 - b[j].0) - inter;
        best[i] = best[i].max(inter as f64 / union as f64);
    }
    let weighted: f64 = a.iter().zip(&best).map(|(blk, j)| (blk.1 - blk.0) as f64 * j).sum();
    Ok(weighted / n as f64)
}

fn pairs(m: usize) -> f64 {
    let m = m as f64;
    m * (m - 1.0) / 2.0
}

/// Rand index over point pairs, from the block contingency table.
pub fn rand_index(truth: &ChangePointSet, pred: &ChangePointSet, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidChangePoints(format!("rand index needs at least 2 points, got {n}")));
    }
    truth.check(n)?;
    pred.check(n)?;
    let same_truth: f64 = truth.blocks(n).map(|(s, e)| pairs(e - s)).sum();
    let same_pred: f64 = pred.blocks(n).map(|(s, e)| pairs(e - s)).sum();
    let same_both: f64 = overlaps(truth, pred, n).iter().map(|&(_, _, o)| pairs(o)).sum();
    let total = pairs(n);
    Ok((total - same_truth - same_pred + 2.0 * same_both) / total)
}

/// Empirical distribution of `1 - score`: sorted `(deficit, fraction <= deficit)`.
pub fn deficit_cdf(scores: &[f64]) -> Vec<(f64, f64)> {
    let mut deficits: Vec<f64> = scores.iter().map(|s| 1.0 - s).collect();
    deficits.sort_by(f64::total_cmp);
    let n = deficits.len() as f64;
    let mut out: Vec<(f64, f64)> = Vec::new();
    for (i, d) in deficits.iter().enumerate() {
        let frac = (i + 1) as f64 / n;
        match out.last_mut() {
            Some(last) if last.0 == *d => last.1 = frac,
            _ => out.push((*d, frac)),
        }
    }
    out
}
