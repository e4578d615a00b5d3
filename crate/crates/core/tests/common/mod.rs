// SPDX-License-Identifier: MIT OR Apache-2.0

#![allow(dead_code)]

use kseg::Signal;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random signal with jittered, strictly increasing timestamps.
pub fn random_signal(n: usize, d: usize, seed: u64) -> Signal {
    let mut r = rng(seed);
    let mut t = r.random_range(-5.0..5.0);
    let mut times = Vec::with_capacity(n);
    for _ in 0..n {
        times.push(t);
        t += r.random_range(0.2..2.0);
    }
    let values = (0..n * d).map(|_| r.random_range(-4.0..4.0)).collect();
    Signal::new(times, values, d).unwrap()
}

/// Noise-free piecewise-linear signal with unit-spaced times and a jump at every break.
pub fn piecewise_linear(n: usize, d: usize, breaks: &[usize], seed: u64) -> Signal {
    let mut r = rng(seed);
    let pieces = breaks.len() + 1;
    let params: Vec<Vec<(f64, f64)>> = (0..pieces)
        .map(|_| (0..d).map(|_| (r.random_range(-10.0..10.0), r.random_range(-0.5..0.5))).collect())
        .collect();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let piece = breaks.iter().filter(|&&b| i >= b).count();
            params[piece].iter().map(|(c, m)| c + m * i as f64).collect()
        })
        .collect();
    Signal::from_rows(&rows).unwrap()
}

/// All strictly increasing `k - 1` subsets of `lo..=hi` with gaps of at least `min_size`
/// and a last element at most `n - min_size`.
pub fn all_change_points(n: usize, k: usize, min_size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, left: usize, n: usize, min_size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            if n - cur.last().copied().unwrap_or(0) >= min_size {
                out.push(cur.clone());
            }
            return;
        }
        for b in start..=n.saturating_sub(min_size) {
            cur.push(b);
            rec(b + min_size, left - 1, n, min_size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(min_size, k - 1, n, min_size, &mut Vec::new(), &mut out);
    out
}

/// Cost of a partition recomputed pointwise from per-interval normal equations.
pub fn brute_partition_cost(signal: &Signal, cps: &[usize]) -> f64 {
    let n = signal.len();
    let mut start = 0;
    let mut total = 0.0;
    for &end in cps.iter().chain(std::iter::once(&n)) {
        total += ols_residual(signal, start, end);
        start = end;
    }
    total
}

/// Per-dimension `(intercept, slope)` from the 2x2 normal equations, solved by Cramer's rule.
pub fn ols_fit(signal: &Signal, i: usize, j: usize) -> Vec<(f64, f64)> {
    let t = &signal.times()[i..j];
    let n = (j - i) as f64;
    let st: f64 = t.iter().sum();
    let stt: f64 = t.iter().map(|v| v * v).sum();
    let det = n * stt - st * st;
    (0..signal.dim())
        .map(|q| {
            let sx: f64 = (i..j).map(|p| signal.row(p)[q]).sum();
            let stx: f64 = (i..j).map(|p| signal.times()[p] * signal.row(p)[q]).sum();
            if j - i == 1 {
                return (sx, 0.0);
            }
            ((stt * sx - st * stx) / det, (n * stx - st * sx) / det)
        })
        .collect()
}

pub fn ols_residual(signal: &Signal, i: usize, j: usize) -> f64 {
    let fit = ols_fit(signal, i, j);
    (i..j)
        .map(|p| {
            let t = signal.times()[p];
            signal.row(p).iter().zip(&fit).map(|(x, (c, m))| (x - c - m * t).powi(2)).sum::<f64>()
        })
        .sum()
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300) || (a - b).abs() < 1e-300
}
