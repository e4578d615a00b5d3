// SPDX-License-Identifier: MIT OR Apache-2.0

//! Seeded synthetic signals: piecewise-linear segments with a weak polynomial
//! bend, Gaussian, high-frequency trigonometric and impulsive noise.

use std::f64::consts::PI;
use std::ops::RangeInclusive;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::lm::sample_change_points;
use crate::metrics::ChangePointSet;
use crate::par;
use crate::signal::Signal;

const INTERCEPT_RANGE: f64 = 10.0;
const SLOPE_RANGE: f64 = 5.0;

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub n: usize,
    pub dim: usize,
    pub k: usize,
    /// Highest polynomial degree of the non-linear bend, in `2..=4`.
    pub poly_degree_max: usize,
    /// Bound on the bend's range relative to the linear term's range.
    pub nonlinear_scale: f64,
    pub noise_sigma: f64,
    pub trig_amp: f64,
    /// Oscillation frequency range, in cycles per segment.
    pub trig_freq: (f64, f64),
    pub impulse_prob: f64,
    pub impulse_amp: f64,
    /// Each segment holds at least `min_segment_frac * n / k` points (and at least 2).
    pub min_segment_frac: f64,
    pub seed: u64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        Self {
            n: 500,
            dim: 4,
            k: 4,
            poly_degree_max: 4,
            nonlinear_scale: 0.2,
            noise_sigma: 0.5,
            trig_amp: 0.3,
            trig_freq: (10.0, 50.0),
            impulse_prob: 0.005,
            impulse_amp: 2.5,
            min_segment_frac: 0.3,
            seed: 0,
        }
    }
}

impl SynthSpec {
    /// The same layout with every perturbation switched off.
    pub fn noise_free(self) -> Self {
        Self { nonlinear_scale: 0.0, noise_sigma: 0.0, trig_amp: 0.0, impulse_prob: 0.0, impulse_amp: 0.0, ..self }
    }

    pub fn min_segment_len(&self) -> usize {
        if self.k == 0 {
            return 2;
        }
        2usize.max((self.min_segment_frac * self.n as f64 / self.k as f64).floor() as usize)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.dim == 0 || self.k == 0 || self.n == 0 {
            return bad(format!("n, dim and k must be positive (n={}, dim={}, k={})", self.n, self.dim, self.k));
        }
        if !(2..=4).contains(&self.poly_degree_max) {
            return bad(format!("poly_degree_max must lie in 2..=4, got {}", self.poly_degree_max));
        }
        let scales = [self.nonlinear_scale, self.noise_sigma, self.trig_amp, self.impulse_amp];
        if scales.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return bad("noise and non-linearity scales must be finite and non-negative".into());
        }
        if !(0.0..=1.0).contains(&self.impulse_prob) {
            return bad(format!("impulse_prob must lie in [0, 1], got {}", self.impulse_prob));
        }
        let (lo, hi) = self.trig_freq;
        if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= hi) {
            return bad(format!("invalid frequency range ({lo}, {hi})"));
        }
        if !(0.0..=1.0).contains(&self.min_segment_frac) {
            return bad(format!("min_segment_frac must lie in [0, 1], got {}", self.min_segment_frac));
        }
        let need = self.k * self.min_segment_len();
        if self.n < need {
            return Err(Error::Infeasible(format!(
                "{} points cannot hold {} segments of at least {} points",
                self.n,
                self.k,
                self.min_segment_len()
            )));
        }
        Ok(())
    }
}

/// Generates one signal and its true change points.
pub fn generate(spec: &SynthSpec) -> Result<(Signal, ChangePointSet)> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (n, d) = (spec.n, spec.dim);
    let cps = sample_change_points(n, spec.k, spec.min_segment_len(), &mut rng)?;
    let mut values = vec![0.0; n * d];

    let bounds: Vec<usize> = std::iter::once(0).chain(cps.iter().copied()).chain(std::iter::once(n)).collect();
    let degrees = 2..=spec.poly_degree_max;
    let mut bend = Vec::new();
    for w in bounds.windows(2) {
        let (start, end) = (w[0], w[1]);
        let span = (end - start - 1).max(1) as f64;
        let unit = |p: usize| (p - start) as f64 / span;
        for q in 0..d {
            let intercept = rng.random_range(-INTERCEPT_RANGE..=INTERCEPT_RANGE);
            let slope = rng.random_range(-SLOPE_RANGE..=SLOPE_RANGE);
            let coeffs: Vec<f64> = degrees.clone().map(|_| rng.random_range(-1.0..=1.0)).collect();
            let bend_frac: f64 = rng.random();
            let freq = rng.random_range(spec.trig_freq.0..=spec.trig_freq.1);
            let phase = rng.random_range(0.0..2.0 * PI);

            bend.clear();
            bend.extend((start..end).map(|p| {
                let u = unit(p);
                coeffs.iter().zip(degrees.clone()).map(|(a, deg)| a * u.powi(deg as i32)).sum::<f64>()
            }));
            let peak = bend.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let bend_scale = if peak > 0.0 { spec.nonlinear_scale * slope.abs() * bend_frac / peak } else { 0.0 };

            for (p, b) in (start..end).zip(&bend) {
                let u = unit(p);
                let trig = spec.trig_amp * (2.0 * PI * freq * u + phase).sin();
                values[p * d + q] = intercept + slope * u + bend_scale * b + trig;
            }
        }
    }

    for p in 0..n {
        for q in 0..d {
            let z: f64 = rng.sample(StandardNormal);
            values[p * d + q] += spec.noise_sigma * z;
        }
        if rng.random::<f64>() < spec.impulse_prob {
            for q in 0..d {
                let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                values[p * d + q] += sign * spec.impulse_amp;
            }
        }
    }

    let times = (0..n).map(|i| i as f64).collect();
    Ok((Signal::new(times, values, d)?, ChangePointSet::new(cps)?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusItem {
    pub spec: SynthSpec,
    pub signal: Signal,
    pub truth: ChangePointSet,
}

fn check_range(name: &str, r: &RangeInclusive<usize>) -> Result<()> {
    if r.start() > r.end() || *r.start() == 0 {
        return Err(Error::InvalidConfig(format!("{name} range {}..={} is empty or starts at 0", r.start(), r.end())));
    }
    Ok(())
}

/// Generates `count` signals with sizes drawn log-uniformly from `n_range`
/// and `k`, `dim` drawn uniformly; item `i` uses a seed derived from `(seed, i)`.
pub fn generate_corpus(
    base: &SynthSpec,
    count: usize,
    n_range: RangeInclusive<usize>,
    k_range: RangeInclusive<usize>,
    dim_range: RangeInclusive<usize>,
    seed: u64,
) -> Result<Vec<CorpusItem>> {
    check_range("n", &n_range)?;
    check_range("k", &k_range)?;
    check_range("dim", &dim_range)?;
    let items = par::map_range(0..count, 1, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(par::derive_seed(seed, i as u64));
        let (ln_lo, ln_hi) = ((*n_range.start() as f64).ln(), (*n_range.end() as f64).ln());
        let n = rng.random_range(ln_lo..=ln_hi).exp().round() as usize;
        let n = n.clamp(*n_range.start(), *n_range.end());
        let k = rng.random_range(k_range.clone());
        let dim = rng.random_range(dim_range.clone());
        let spec = SynthSpec { n, k, dim, seed: rng.next_u64(), ..base.clone() };
        let (signal, truth) = generate(&spec)?;
        Ok(CorpusItem { spec, signal, truth })
    });
    items.into_iter().collect()
}
