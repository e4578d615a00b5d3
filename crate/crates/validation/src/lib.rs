// SPDX-License-Identifier: MIT OR Apache-2.0

//! Slow, direct reference implementations used to check the fast code paths.
//! Nothing here shares code with `kseg`.

/// Per-dimension least-squares line through `(t, x)` from the 2x2 normal
/// equations. Returns `(intercept, slope)`, one entry per dimension.
pub fn ols_fit(times: &[f64], rows: &[&[f64]]) -> (Vec<f64>, Vec<f64>) {
    let n = times.len() as f64;
    let dim = rows.first().map_or(0, |r| r.len());
    let st: f64 = times.iter().sum();
    let stt: f64 = times.iter().map(|t| t * t).sum();
    let det = n * stt - st * st;
    let mut c = vec![0.0; dim];
    let mut m = vec![0.0; dim];
    for q in 0..dim {
        let sx: f64 = rows.iter().map(|r| r[q]).sum();
        let stx: f64 = times.iter().zip(rows).map(|(t, r)| t * r[q]).sum();
        if det.abs() <= f64::EPSILON * n * stt {
            c[q] = sx / n;
        } else {
            m[q] = (n * stx - st * sx) / det;
            c[q] = (stt * sx - st * stx) / det;
        }
    }
    (c, m)
}

/// Sum of squared distances to the least-squares line.
pub fn ols_cost(times: &[f64], rows: &[&[f64]]) -> f64 {
    let (c, m) = ols_fit(times, rows);
    times
        .iter()
        .zip(rows)
        .map(|(t, r)| r.iter().enumerate().map(|(q, x)| (x - c[q] - m[q] * t).powi(2)).sum::<f64>())
        .sum()
}

/// Every set of `k - 1` interior boundaries on `n` points with segments of at
/// least `min_size` points.
pub fn all_boundaries(n: usize, k: usize, min_size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, left: usize, n: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            if n - start >= min {
                out.push(cur.clone());
            }
            return;
        }
        for b in start + min..=n.saturating_sub(left * min) {
            cur.push(b);
            rec(b, left - 1, n, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 1 {
        rec(0, k - 1, n, min_size, &mut Vec::new(), &mut out);
    }
    out
}

/// Block label of every point.
pub fn labels(boundaries: &[usize], n: usize) -> Vec<usize> {
    (0..n).map(|i| boundaries.iter().filter(|&&b| b <= i).count()).collect()
}

/// Fraction of unordered point pairs on which two partitions agree.
pub fn rand_by_pairs(a: &[usize], b: &[usize], n: usize) -> f64 {
    let (la, lb) = (labels(a, n), labels(b, n));
    let mut agree = 0u64;
    for s in 0..n {
        for t in s + 1..n {
            agree += u64::from((la[s] == la[t]) == (lb[s] == lb[t]));
        }
    }
    agree as f64 / (n * (n - 1) / 2) as f64
}

pub fn median(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        0.5 * (xs[m - 1] + xs[m])
    }
}
