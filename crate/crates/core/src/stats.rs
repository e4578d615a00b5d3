// SPDX-License-Identifier: MIT OR Apache-2.0

//! Cumulative moment sums and the closed-form 1-segmentation built on them.
//!
//! All interval queries use the half-open index range `[i, j)`, so the
//! sub-signal `(i, j]` in one-based terms is `i..j` here.

use crate::error::{Error, Result};
use crate::signal::{KSegment, LinearSegment, Signal};

/// Prefix sums of `t`, `t^2`, `x`, `t*x` and `|x|^2`, each with a leading zero entry.
///
/// Every sum carries a running compensation term (Neumaier summation), so an
/// interval difference is accurate relative to the interval's own moments
/// rather than to the whole prefix.
#[derive(Debug, Clone, PartialEq)]
pub struct PrefixStats {
    dim: usize,
    times: Vec<f64>,
    sum_t: Vec<f64>,
    sum_tt: Vec<f64>,
    sum_x: Vec<f64>,
    sum_tx: Vec<f64>,
    sum_xx: Vec<f64>,
    err_t: Vec<f64>,
    err_tt: Vec<f64>,
    err_x: Vec<f64>,
    err_tx: Vec<f64>,
    err_xx: Vec<f64>,
}

/// `a + b` and the rounding error of that addition.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bp = s - a;
    (s, (a - (s - bp)) + (b - bp))
}

#[inline]
fn diff(hi: &[f64], lo: &[f64], i: usize, j: usize) -> f64 {
    (hi[j] - hi[i]) + (lo[j] - lo[i])
}

/// Raw moments of an interval, obtained as differences of prefix entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Moments {
    pub count: usize,
    pub sum_t: f64,
    pub sum_tt: f64,
    pub sum_x: Vec<f64>,
    pub sum_tx: Vec<f64>,
    pub sum_xx: f64,
}

impl PrefixStats {
    pub fn new(signal: &Signal) -> Self {
        let n = signal.len();
        let d = signal.dim();
        let mut sum_t = vec![0.0; n + 1];
        let mut sum_tt = vec![0.0; n + 1];
        let mut sum_x = vec![0.0; (n + 1) * d];
        let mut sum_tx = vec![0.0; (n + 1) * d];
        let mut sum_xx = vec![0.0; n + 1];
        let mut err_t = vec![0.0; n + 1];
        let mut err_tt = vec![0.0; n + 1];
        let mut err_x = vec![0.0; (n + 1) * d];
        let mut err_tx = vec![0.0; (n + 1) * d];
        let mut err_xx = vec![0.0; n + 1];
        for (i, (&t, row)) in signal.times().iter().zip(signal.values().chunks_exact(d)).enumerate() {
            let (s, e) = two_sum(sum_t[i], t);
            (sum_t[i + 1], err_t[i + 1]) = (s, err_t[i] + e);
            let (s, e) = two_sum(sum_tt[i], t * t);
            (sum_tt[i + 1], err_tt[i + 1]) = (s, err_tt[i] + e);
            let (prev, next) = (i * d, (i + 1) * d);
            let mut sxx = 0.0;
            for q in 0..d {
                let x = row[q];
                let (s, e) = two_sum(sum_x[prev + q], x);
                (sum_x[next + q], err_x[next + q]) = (s, err_x[prev + q] + e);
                let (s, e) = two_sum(sum_tx[prev + q], t * x);
                (sum_tx[next + q], err_tx[next + q]) = (s, err_tx[prev + q] + e);
                sxx += x * x;
            }
            let (s, e) = two_sum(sum_xx[i], sxx);
            (sum_xx[i + 1], err_xx[i + 1]) = (s, err_xx[i] + e);
        }
        Self {
            dim: d,
            times: signal.times().to_vec(),
            sum_t,
            sum_tt,
            sum_x,
            sum_tx,
            sum_xx,
            err_t,
            err_tt,
            err_x,
            err_tx,
            err_xx,
        }
    }

    /// Number of points covered.
    #[inline]
    pub fn len(&self) -> usize {
        self.times.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// Rounded prefix sums; interval queries also apply the compensation terms.
    pub fn prefix_t(&self) -> &[f64] {
        &self.sum_t
    }

    pub fn prefix_tt(&self) -> &[f64] {
        &self.sum_tt
    }

    /// Row `i` of the cumulative `x` sums (`i` in `0..=n`).
    pub fn prefix_x(&self, i: usize) -> &[f64] {
        &self.sum_x[i * self.dim..(i + 1) * self.dim]
    }

    pub fn prefix_tx(&self, i: usize) -> &[f64] {
        &self.sum_tx[i * self.dim..(i + 1) * self.dim]
    }

    pub fn prefix_xx(&self) -> &[f64] {
        &self.sum_xx
    }

    /// Moments of the points in `[i, j)`. Empty ranges yield zeros.
    pub fn moments(&self, i: usize, j: usize) -> Moments {
        debug_assert!(i <= j && j <= self.len());
        let d = self.dim;
        Moments {
            count: j - i,
            sum_t: diff(&self.sum_t, &self.err_t, i, j),
            sum_tt: diff(&self.sum_tt, &self.err_tt, i, j),
            sum_x: (0..d).map(|q| self.x_diff(i, j, q)).collect(),
            sum_tx: (0..d).map(|q| self.tx_diff(i, j, q)).collect(),
            sum_xx: diff(&self.sum_xx, &self.err_xx, i, j),
        }
    }

    #[inline]
    fn x_diff(&self, i: usize, j: usize, q: usize) -> f64 {
        let d = self.dim;
        (self.sum_x[j * d + q] - self.sum_x[i * d + q]) + (self.err_x[j * d + q] - self.err_x[i * d + q])
    }

    #[inline]
    fn tx_diff(&self, i: usize, j: usize, q: usize) -> f64 {
        let d = self.dim;
        (self.sum_tx[j * d + q] - self.sum_tx[i * d + q]) + (self.err_tx[j * d + q] - self.err_tx[i * d + q])
    }

    /// Centred time statistics of `[i, j)`: `(mean_t, sum (t - mean_t)^2, shift)`.
    ///
    /// Times are shifted by the interval's first timestamp before the
    /// second moment is formed.
    #[inline]
    fn time_spread(&self, i: usize, j: usize) -> (f64, f64, f64) {
        let n = (j - i) as f64;
        let shift = self.times[i];
        let s1 = diff(&self.sum_t, &self.err_t, i, j);
        let s2 = diff(&self.sum_tt, &self.err_tt, i, j);
        let t1 = s1 - n * shift;
        let t2 = s2 - 2.0 * shift * s1 + n * shift * shift;
        let spread = t2 - t1 * t1 / n;
        (shift + t1 / n, spread, shift)
    }

    fn check_range(&self, i: usize, j: usize) -> Result<()> {
        if i >= j || j > self.len() {
            return Err(Error::Contract(format!(
                "interval [{i}, {j}) is not a non-empty range of a {}-point signal",
                self.len()
            )));
        }
        Ok(())
    }

    /// Least-squares line of `[i, j)`, per dimension: slope = Cov(T, X) / Var(T).
    ///
    /// A single point (zero time variance) yields a zero slope through the point.
    pub fn fit(&self, i: usize, j: usize) -> Result<LinearSegment> {
        self.check_range(i, j)?;
        Ok(self.fit_unchecked(i, j))
    }

    pub(crate) fn fit_unchecked(&self, i: usize, j: usize) -> LinearSegment {
        let d = self.dim;
        let n = (j - i) as f64;
        let (mean_t, spread, shift) = self.time_spread(i, j);
        let mut intercept = Vec::with_capacity(d);
        let mut slope = Vec::with_capacity(d);
        for q in 0..d {
            let sx = self.x_diff(i, j, q);
            let stx = self.tx_diff(i, j, q);
            let mean_x = sx / n;
            let m = if spread > 0.0 {
                // sum (t - shift) x - sum (t - shift) * mean_x
                let cov = (stx - shift * sx) - (mean_t - shift) * sx;
                cov / spread
            } else {
                0.0
            };
            slope.push(m);
            intercept.push(mean_x - mean_t * m);
        }
        LinearSegment { intercept, slope, start: i, end: j }
    }

    /// Residual sum of squares of `[i, j)` about its least-squares line.
    pub fn cost(&self, i: usize, j: usize) -> Result<f64> {
        self.check_range(i, j)?;
        Ok(self.cost_unchecked(i, j))
    }

    /// As [`PrefixStats::cost`] without the range check.
    #[inline]
    pub fn cost_unchecked(&self, i: usize, j: usize) -> f64 {
        // Any one or two points lie exactly on a line.
        if j - i <= 2 {
            return 0.0;
        }
        let d = self.dim;
        let n = (j - i) as f64;
        let (mean_t, spread, shift) = self.time_spread(i, j);
        let mut explained = 0.0;
        for q in 0..d {
            let sx = self.x_diff(i, j, q);
            let stx = self.tx_diff(i, j, q);
            let cov = (stx - shift * sx) - (mean_t - shift) * sx;
            explained += sx * sx / n + cov * cov / spread;
        }
        let rss = diff(&self.sum_xx, &self.err_xx, i, j) - explained;
        rss.max(0.0)
    }
}

/// Builds the prefix sums of a signal.
pub fn build_prefix_stats(signal: &Signal) -> PrefixStats {
    PrefixStats::new(signal)
}

/// 1-segment-mean of the sub-signal `[i, j)`.
pub fn fit_1segment(stats: &PrefixStats, i: usize, j: usize) -> Result<LinearSegment> {
    stats.fit(i, j)
}

/// Fitting cost of `[i, j)` about its 1-segment-mean.
pub fn interval_cost(stats: &PrefixStats, i: usize, j: usize) -> Result<f64> {
    stats.cost(i, j)
}

/// Pointwise fitting cost of `f` using the stored segment parameters.
pub fn ksegment_cost(signal: &Signal, f: &KSegment) -> Result<f64> {
    f.check_span(signal.len())?;
    let times = signal.times();
    Ok(f.segments()
        .iter()
        .map(|seg| (seg.start..seg.end).map(|p| seg.sq_residual(times[p], signal.row(p))).sum::<f64>())
        .sum())
}

/// Fits every interval delimited by `change_points` to its 1-segment-mean.
pub fn fit_boundaries(stats: &PrefixStats, change_points: &[usize]) -> Result<KSegment> {
    let n = stats.len();
    let mut start = 0;
    let mut segments = Vec::with_capacity(change_points.len() + 1);
    for &end in change_points.iter().chain(std::iter::once(&n)) {
        if end <= start || end > n {
            return Err(Error::InvalidChangePoints(format!(
                "change points {change_points:?} are not strictly increasing within (0, {n})"
            )));
        }
        segments.push(stats.fit_unchecked(start, end));
        start = end;
    }
    Ok(KSegment::from_parts_unchecked(segments))
}

/// Sum of interval costs for the segmentation given by `change_points` (unchecked).
pub fn partition_cost(stats: &PrefixStats, change_points: &[usize]) -> f64 {
    let mut start = 0;
    let mut total = 0.0;
    for &end in change_points.iter().chain(std::iter::once(&stats.len())) {
        total += stats.cost_unchecked(start, end);
        start = end;
    }
    total
}

/// Interior boundaries of the uniform `k`-way split of `n` points.
pub fn uniform_change_points(n: usize, k: usize) -> Vec<usize> {
    (1..k).map(|j| j * n / k).collect()
}

pub(crate) fn check_feasible(n: usize, k: usize, min_size: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Infeasible("k must be at least 1".into()));
    }
    if min_size == 0 {
        return Err(Error::InvalidConfig("minimum segment size must be at least 1".into()));
    }
    match k.checked_mul(min_size) {
        Some(need) if need <= n => Ok(()),
        _ => Err(Error::infeasible(n, k, min_size)),
    }
}
