// SPDX-License-Identifier: MIT OR Apache-2.0

//! Corpus-wide comparison of several algorithms against a baseline.

use std::collections::HashMap;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use kseg::{covering_score, deficit_cdf, rand_index, ChangePointSet, Signal};
use serde::Serialize;

use crate::algo::{self, AlgoOptions, Algorithm};
use crate::args::BenchArgs;
use crate::error::{CliError, Result};
use crate::io::{self, ManifestEntry};

/// Costs below this are treated as equal when forming ratios.
pub const COST_FLOOR: f64 = 1e-9;

/// One algorithm on one signal.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub algorithm: Algorithm,
    pub signal: String,
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub change_points: Vec<usize>,
    pub cost: f64,
    pub covering: Option<f64>,
    pub rand: Option<f64>,
    pub seconds: f64,
}

#[derive(Debug, Serialize)]
struct RunRow<'a> {
    signal: &'a str,
    algorithm: &'static str,
    n: usize,
    d: usize,
    k: usize,
    change_points: String,
    cost: Option<f64>,
    covering: Option<f64>,
    rand: Option<f64>,
    seconds: Option<f64>,
    error: Option<&'a str>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub algorithm: &'static str,
    pub runs: usize,
    pub failures: usize,
    pub rel_runtime: Option<f64>,
    pub rel_cost: Option<f64>,
    pub covering: Option<f64>,
    pub rand: Option<f64>,
    pub mean_seconds: Option<f64>,
}

#[derive(Debug, Serialize)]
struct CdfRow {
    deficit: f64,
    fraction: f64,
    algorithm: &'static str,
    metric: &'static str,
}

type Job = (usize, Algorithm);
/// A run tagged with its algorithm so failures stay attributable.
pub type Run = (Algorithm, std::result::Result<EvalReport, String>);

fn evaluate(
    entry: &ManifestEntry,
    signal: &Signal,
    algo: Algorithm,
    opts: &AlgoOptions,
) -> std::result::Result<EvalReport, String> {
    let out = algo::run(algo, signal, entry.k, opts).map_err(|e| e.to_string())?;
    let pred = out.segmentation.change_points();
    let scores = ChangePointSet::new(entry.change_points.clone()).ok().and_then(|truth| {
        let p = ChangePointSet::new(pred.clone()).ok()?;
        Some((covering_score(&truth, &p, signal.len()).ok()?, rand_index(&truth, &p, signal.len()).ok()?))
    });
    Ok(EvalReport {
        algorithm: algo,
        signal: entry.path.clone(),
        n: signal.len(),
        d: signal.dim(),
        k: entry.k,
        change_points: pred,
        cost: out.cost,
        covering: scores.map(|s| s.0),
        rand: scores.map(|s| s.1),
        seconds: out.seconds,
    })
}

/// Runs every `(signal, algorithm)` pair. Results are ordered by signal, then
/// by position in `algos`, whatever order the workers finish in.
pub fn run_all(
    entries: &[ManifestEntry],
    signals: &[Signal],
    algos: &[Algorithm],
    opts: &AlgoOptions,
    jobs: usize,
) -> Vec<Run> {
    let queue: Vec<Job> = (0..entries.len()).flat_map(|i| algos.iter().map(move |&a| (i, a))).collect();
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Run>>> = Mutex::new(vec![None; queue.len()]);
    std::thread::scope(|scope| {
        for _ in 0..jobs.max(1).min(queue.len().max(1)) {
            scope.spawn(|| {
                kseg::par::run_serial(|| loop {
                    let j = next.fetch_add(1, Ordering::Relaxed);
                    let Some(&(i, algo)) = queue.get(j) else { break };
                    let run = evaluate(&entries[i], &signals[i], algo, opts);
                    results.lock().expect("worker panicked")[j] = Some((algo, run));
                })
            });
        }
    });
    results.into_inner().expect("worker panicked").into_iter().map(|r| r.expect("every job ran")).collect()
}

fn mean(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, count) = xs.fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
    (count > 0).then(|| sum / count as f64)
}

/// Per-algorithm means; ratios are formed per signal against `baseline`
/// and only over signals where both runs succeeded.
pub fn summarize(runs: &[Run], algos: &[Algorithm], baseline: Algorithm, timing: bool) -> Vec<SummaryRow> {
    let ok: Vec<&EvalReport> = runs.iter().filter_map(|(_, r)| r.as_ref().ok()).collect();
    let base: HashMap<&str, &EvalReport> =
        ok.iter().filter(|r| r.algorithm == baseline).map(|r| (r.signal.as_str(), *r)).collect();
    algos
        .iter()
        .map(|&algo| {
            let mine: Vec<&EvalReport> = ok.iter().copied().filter(|r| r.algorithm == algo).collect();
            let paired: Vec<(&EvalReport, &EvalReport)> =
                mine.iter().filter_map(|r| base.get(r.signal.as_str()).map(|b| (*r, *b))).collect();
            let rel_runtime = if timing {
                mean(paired.iter().map(|(r, b)| if r.algorithm == b.algorithm { 1.0 } else { r.seconds / b.seconds }))
            } else {
                None
            };
            SummaryRow {
                algorithm: algo.name(),
                runs: mine.len(),
                failures: runs.iter().filter(|(a, r)| *a == algo && r.is_err()).count(),
                rel_runtime,
                rel_cost: mean(paired.iter().map(|(r, b)| r.cost.max(COST_FLOOR) / b.cost.max(COST_FLOOR))),
                covering: mean(mine.iter().filter_map(|r| r.covering)),
                rand: mean(mine.iter().filter_map(|r| r.rand)),
                mean_seconds: if timing { mean(mine.iter().map(|r| r.seconds)) } else { None },
            }
        })
        .collect()
}

fn csv_writer(path: &Path) -> Result<csv::Writer<std::fs::File>> {
    csv::Writer::from_path(path).map_err(|e| CliError::Format { path: path.to_path_buf(), message: e.to_string() })
}

fn write_rows<T: Serialize>(path: &Path, rows: impl IntoIterator<Item = T>) -> Result<()> {
    let wrap = |e: csv::Error| CliError::Format { path: path.to_path_buf(), message: e.to_string() };
    let mut w = csv_writer(path)?;
    for row in rows {
        w.serialize(row).map_err(wrap)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

pub fn bench(args: &BenchArgs) -> Result<Vec<SummaryRow>> {
    if args.algos.is_empty() {
        return Err(CliError::Usage("no algorithms given".into()));
    }
    if !args.algos.contains(&args.baseline) {
        return Err(CliError::Usage(format!("baseline `{}` must be one of --algos", args.baseline)));
    }
    let manifest = args.corpus.join(io::MANIFEST);
    let entries = io::read_manifest(&manifest)?;
    let signals = entries.iter().map(|e| io::read_signal(&args.corpus.join(&e.path))).collect::<Result<Vec<_>>>()?;
    let runs = run_all(&entries, &signals, &args.algos, &args.options, args.jobs);
    let timing = !args.no_timing;

    let out = io::create_dir(&args.out_dir)?;
    write_rows(
        &out.join("runs.csv"),
        runs.iter().enumerate().map(|(j, (algo, run))| {
            let e = &entries[j / args.algos.len()];
            match run {
                Ok(r) => RunRow {
                    signal: &e.path,
                    algorithm: r.algorithm.name(),
                    n: r.n,
                    d: r.d,
                    k: r.k,
                    change_points: r.change_points.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
                    cost: Some(r.cost),
                    covering: r.covering,
                    rand: r.rand,
                    seconds: timing.then_some(r.seconds),
                    error: None,
                },
                Err(msg) => RunRow {
                    signal: &e.path,
                    algorithm: algo.name(),
                    n: e.n,
                    d: e.d,
                    k: e.k,
                    change_points: String::new(),
                    cost: None,
                    covering: None,
                    rand: None,
                    seconds: None,
                    error: Some(msg),
                },
            }
        }),
    )?;

    let summary = summarize(&runs, &args.algos, args.baseline, timing);
    write_rows(&out.join("summary.csv"), summary.iter())?;

    let mut cdf = Vec::new();
    for &algo in &args.algos {
        let mine = || runs.iter().filter_map(|(_, r)| r.as_ref().ok()).filter(move |r| r.algorithm == algo);
        for (metric, scores) in [
            ("covering", mine().filter_map(|r| r.covering).collect::<Vec<_>>()),
            ("rand", mine().filter_map(|r| r.rand).collect()),
        ] {
            cdf.extend(deficit_cdf(&scores).into_iter().map(|(deficit, fraction)| CdfRow {
                deficit,
                fraction,
                algorithm: algo.name(),
                metric,
            }));
        }
    }
    write_rows(&out.join("cdf.csv"), cdf)?;
    Ok(summary)
}
