// SPDX-License-Identifier: MIT OR Apache-2.0

//! Signal containers and the piecewise-linear model types.

use crate::error::{Error, Result};

/// A time-ordered `n x d` data set.
///
/// Values are stored row-major: point `i` occupies `values[i*d..(i+1)*d]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    times: Vec<f64>,
    values: Vec<f64>,
    dim: usize,
}

impl Signal {
    pub fn new(times: Vec<f64>, values: Vec<f64>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSignal("dimension must be at least 1".into()));
        }
        if times.is_empty() {
            return Err(Error::InvalidSignal("signal must contain at least one point".into()));
        }
        if values.len() != times.len() * dim {
            return Err(Error::InvalidSignal(format!(
                "expected {} values for {} points of dimension {dim}, got {}",
                times.len() * dim,
                times.len(),
                values.len()
            )));
        }
        if let Some(bad) = times.iter().chain(values.iter()).position(|v| !v.is_finite()) {
            return Err(Error::InvalidSignal(format!("non-finite entry at flat offset {bad}")));
        }
        if let Some(i) = times.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::InvalidSignal(format!(
                "times must be strictly increasing (t[{}] = {} <= t[{}] = {})",
                i + 1,
                times[i + 1],
                i,
                times[i]
            )));
        }
        Ok(Self { times, values, dim })
    }

    /// Builds a signal with timestamps `0, 1, ..., n-1`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        if let Some(i) = rows.iter().position(|r| r.len() != dim) {
            return Err(Error::InvalidSignal(format!("row {i} has inconsistent dimension")));
        }
        let times = (0..rows.len()).map(|i| i as f64).collect();
        Self::new(times, rows.concat(), dim)
    }

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

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }
}

/// One linear piece `x(t) = intercept + t * slope` covering points `[start, end)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSegment {
    pub intercept: Vec<f64>,
    pub slope: Vec<f64>,
    pub start: usize,
    pub end: usize,
}

impl LinearSegment {
    #[inline]
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    pub fn project(&self, t: f64) -> Vec<f64> {
        self.intercept.iter().zip(&self.slope).map(|(c, m)| c + t * m).collect()
    }

    /// Squared Euclidean distance between `x` and the projection at `t`.
    #[inline]
    pub fn sq_residual(&self, t: f64, x: &[f64]) -> f64 {
        x.iter()
            .zip(self.intercept.iter().zip(&self.slope))
            .map(|(x, (c, m))| {
                let r = x - c - t * m;
                r * r
            })
            .sum()
    }
}

/// An ordered, contiguous list of linear pieces spanning a signal.
#[derive(Debug, Clone, PartialEq)]
pub struct KSegment {
    segments: Vec<LinearSegment>,
}

impl KSegment {
    /// Validates contiguity and that the pieces span exactly `n` points.
    pub fn new(segments: Vec<LinearSegment>, n: usize) -> Result<Self> {
        let ks = Self { segments };
        ks.check_span(n)?;
        Ok(ks)
    }

    pub(crate) fn from_parts_unchecked(segments: Vec<LinearSegment>) -> Self {
        Self { segments }
    }

    pub fn check_span(&self, n: usize) -> Result<()> {
        let segs = &self.segments;
        let (Some(first), Some(last)) = (segs.first(), segs.last()) else {
            return Err(Error::Contract("k-segment has no segments".into()));
        };
        if first.start != 0 || last.end != n {
            return Err(Error::Contract(format!(
                "k-segment spans [{}, {}) but the signal has {n} points",
                first.start, last.end
            )));
        }
        for (j, s) in segs.iter().enumerate() {
            if s.start >= s.end {
                return Err(Error::Contract(format!("segment {j} is empty")));
            }
            if let Some(next) = segs.get(j + 1) {
                if s.end != next.start {
                    return Err(Error::Contract(format!("segments {j} and {} are not contiguous", j + 1)));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.segments.len()
    }

    pub fn segments(&self) -> &[LinearSegment] {
        &self.segments
    }

    pub fn into_segments(self) -> Vec<LinearSegment> {
        self.segments
    }

    /// Interior boundaries: the exclusive end of every segment but the last.
    pub fn change_points(&self) -> Vec<usize> {
        self.segments[..self.segments.len() - 1].iter().map(|s| s.end).collect()
    }

    pub fn min_len(&self) -> usize {
        self.segments.iter().map(LinearSegment::len).min().unwrap_or(0)
    }
}
