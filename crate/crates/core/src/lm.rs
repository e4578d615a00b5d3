// SPDX-License-Identifier: MIT OR Apache-2.0

//! Lloyd-Max-like alternating refinement of a k-segmentation.
//!
//! Each iteration re-optimizes every shared boundary against the current
//! line parameters of its two neighbours, then refits every segment to its
//! 1-segment-mean. Both half-steps never increase the fitting cost.

use rand::seq::{index, SliceRandom};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::par;
use crate::signal::{KSegment, LinearSegment, Signal};
use crate::stats::{check_feasible, fit_boundaries, ksegment_cost, uniform_change_points, PrefixStats};

/// Iteration limits and constraints for [`lm_refine`].
#[derive(Debug, Clone, PartialEq)]
pub struct LmConfig {
    pub max_iter: usize,
    /// Minimum number of points per segment.
    pub min_size: usize,
    /// Stop once an iteration lowers the cost by less than this fraction.
    pub tol: f64,
    pub seed: u64,
}

impl Default for LmConfig {
    fn default() -> Self {
        Self { max_iter: 30, min_size: 2, tol: 1e-6, seed: 0 }
    }
}

impl LmConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be at least 1".into()));
        }
        if self.min_size == 0 {
            return Err(Error::InvalidConfig("min_size must be at least 1".into()));
        }
        if !(0.0..1.0).contains(&self.tol) {
            return Err(Error::InvalidConfig(format!("tol must lie in [0, 1), got {}", self.tol)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LmTrace {
    /// Fitting cost of the initial k-segment followed by one entry per accepted iteration.
    pub costs: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

impl LmTrace {
    pub fn final_cost(&self) -> f64 {
        *self.costs.last().expect("trace always holds the initial cost")
    }
}

/// Refines `init` to a local optimum with the same number of segments.
pub fn lm_refine(
    signal: &Signal,
    stats: &PrefixStats,
    init: &KSegment,
    config: &LmConfig,
) -> Result<(KSegment, LmTrace)> {
    config.validate()?;
    let n = signal.len();
    check_pairing(signal, stats)?;
    init.check_span(n)?;
    let k = init.k();
    check_feasible(n, k, config.min_size)?;
    if init.min_len() < config.min_size {
        return Err(Error::Contract(format!(
            "initial segment of {} points is shorter than the minimum size {}",
            init.min_len(),
            config.min_size
        )));
    }
    if init.segments().iter().any(|s| s.intercept.len() != signal.dim() || s.slope.len() != signal.dim()) {
        return Err(Error::Contract("initial segment parameters do not match the signal dimension".into()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut current = init.clone().into_segments();
    let mut cost = ksegment_cost(signal, init)?;
    let mut trace = LmTrace { costs: vec![cost], iterations: 0, converged: false };
    if k == 1 {
        let refit = vec![stats.fit_unchecked(0, n)];
        let refit_cost = stats.cost_unchecked(0, n);
        trace.iterations = 1;
        trace.converged = true;
        if refit_cost <= cost {
            trace.costs.push(refit_cost);
            current = refit;
        }
        return Ok((KSegment::from_parts_unchecked(current), trace));
    }

    let mut pairs: Vec<usize> = (0..k - 1).collect();
    let mut scratch = Vec::new();
    let mut bounds: Vec<usize> = current.iter().map(|s| s.start).chain(std::iter::once(n)).collect();
    for _ in 0..config.max_iter {
        trace.iterations += 1;
        pairs.shuffle(&mut rng);
        for &i in &pairs {
            let split = best_split(
                signal,
                &current[i],
                &current[i + 1],
                bounds[i],
                bounds[i + 2],
                config.min_size,
                &mut scratch,
            );
            bounds[i + 1] = split;
        }
        let refit: Vec<LinearSegment> = bounds.windows(2).map(|w| stats.fit_unchecked(w[0], w[1])).collect();
        let refit_cost: f64 = bounds.windows(2).map(|w| stats.cost_unchecked(w[0], w[1])).sum();

        // Unmoved boundaries with unchanged fits reproduce this state exactly.
        if refit == current {
            trace.converged = true;
            if refit_cost <= cost {
                trace.costs.push(refit_cost);
            }
            break;
        }
        // Rounding in the moment formulas can report a hair above the previous
        // cost for a no-op step; keep the previous k-segment in that case.
        if refit_cost > cost {
            trace.converged = true;
            break;
        }
        let slow = refit_cost >= (1.0 - config.tol) * cost;
        current = refit;
        cost = refit_cost;
        trace.costs.push(cost);
        if slow {
            trace.converged = true;
            break;
        }
    }
    Ok((KSegment::from_parts_unchecked(current), trace))
}

/// Best shared boundary `s` of the pair covering `[lo, hi)`, scored with the
/// pair's line parameters held fixed. Ties resolve to the smallest `s`.
fn best_split(
    signal: &Signal,
    left: &LinearSegment,
    right: &LinearSegment,
    lo: usize,
    hi: usize,
    min_size: usize,
    suffix: &mut Vec<f64>,
) -> usize {
    let first = lo + min_size;
    let last = hi - min_size;
    let times = signal.times();

    // suffix[p - first] = cost of points p..hi under the right segment
    suffix.clear();
    suffix.resize(last - first + 2, 0.0);
    let mut acc = 0.0;
    for p in (first..hi).rev() {
        acc += right.sq_residual(times[p], signal.row(p));
        if p <= last {
            suffix[p - first] = acc;
        }
    }

    let mut prefix: f64 = (lo..first).map(|p| left.sq_residual(times[p], signal.row(p))).sum();
    let mut best = first;
    let mut best_cost = f64::INFINITY;
    for s in first..=last {
        let c = prefix + suffix[s - first];
        if c < best_cost {
            best_cost = c;
            best = s;
        }
        prefix += left.sq_residual(times[s], signal.row(s));
    }
    best
}

fn check_pairing(signal: &Signal, stats: &PrefixStats) -> Result<()> {
    if signal.len() != stats.len() || signal.dim() != stats.dim() {
        return Err(Error::Contract("prefix statistics were built for a different signal".into()));
    }
    Ok(())
}

/// LM started from the uniform `k`-way split.
pub fn lm_uniform(signal: &Signal, stats: &PrefixStats, k: usize, config: &LmConfig) -> Result<(KSegment, LmTrace)> {
    config.validate()?;
    check_feasible(signal.len(), k, config.min_size)?;
    let init = fit_boundaries(stats, &uniform_change_points(signal.len(), k))?;
    lm_refine(signal, stats, &init, config)
}

/// Draws `k - 1` change points uniformly over all splits of `n` points whose
/// segments each hold at least `min_size` points.
pub fn sample_change_points<R: Rng + ?Sized>(n: usize, k: usize, min_size: usize, rng: &mut R) -> Result<Vec<usize>> {
    check_feasible(n, k, min_size)?;
    if k == 1 {
        return Ok(Vec::new());
    }
    // Stars and bars: k - 1 distinct cut positions among slack + k - 1 slots.
    let slack = n - k * min_size;
    let mut picks = index::sample(rng, slack + k - 1, k - 1).into_vec();
    picks.sort_unstable();
    Ok(picks.iter().enumerate().map(|(j, &y)| y - j + (j + 1) * min_size).collect())
}

/// Best of `q` LM runs: the uniform split plus `q - 1` random splits.
///
/// Run `r > 0` draws its initialization and shuffle order from a stream
/// derived from `(config.seed, r)`; the winner is the lowest final cost,
/// ties going to the lower run index.
pub fn lm_multi_init(
    signal: &Signal,
    stats: &PrefixStats,
    k: usize,
    q: usize,
    config: &LmConfig,
) -> Result<(KSegment, LmTrace)> {
    if q == 0 {
        return Err(Error::InvalidConfig("q must be at least 1".into()));
    }
    config.validate()?;
    check_feasible(signal.len(), k, config.min_size)?;
    let runs = par::map_range(0..q, 1, |r| -> Result<(KSegment, LmTrace)> {
        if r == 0 {
            return lm_uniform(signal, stats, k, config);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(par::derive_seed(config.seed, r as u64));
        let cps = sample_change_points(signal.len(), k, config.min_size, &mut rng)?;
        let init = fit_boundaries(stats, &cps)?;
        let run_config = LmConfig { seed: rng.next_u64(), ..config.clone() };
        lm_refine(signal, stats, &init, &run_config)
    });
    let mut best: Option<(KSegment, LmTrace)> = None;
    for run in runs {
        let run = run?;
        let better = best.as_ref().is_none_or(|(_, t)| run.1.final_cost() < t.final_cost());
        if better {
            best = Some(run);
        }
    }
    Ok(best.expect("q >= 1"))
}
