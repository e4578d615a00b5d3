// SPDX-License-Identifier: MIT OR Apache-2.0

//! Signal CSV files, JSON result documents and the corpus manifest.

use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use kseg::{KSegment, Signal};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Reads a `time,f0,...,f{d-1}` CSV file.
pub fn read_signal(path: &Path) -> Result<Signal> {
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(BufReader::new(file));
    let parse_err = |line: u64, message: String| CliError::Parse { path: path.to_path_buf(), line, message };
    let csv_err = |e: csv::Error| {
        let line = e.position().map_or(1, |p| p.line());
        parse_err(line, e.to_string())
    };

    let header = reader.headers().map_err(csv_err)?.clone();
    let dim = header.len().saturating_sub(1);
    if header.get(0) != Some("time") || dim == 0 {
        return Err(parse_err(1, "header must be `time,f0,...`".into()));
    }
    for (q, name) in header.iter().skip(1).enumerate() {
        if name != format!("f{q}") {
            return Err(parse_err(1, format!("expected column `f{q}`, found `{name}`")));
        }
    }

    let mut times = Vec::new();
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_err)?;
        let line = record.position().map_or(0, |p| p.line());
        let mut fields = record.iter().map(|f| {
            f.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| parse_err(line, format!("invalid number `{f}`")))
        });
        let t = fields.next().ok_or_else(|| parse_err(line, "empty row".into()))??;
        if times.last().is_some_and(|&prev| t <= prev) {
            return Err(parse_err(line, format!("time {t} is not strictly increasing")));
        }
        times.push(t);
        for v in fields {
            values.push(v?);
        }
    }
    if times.is_empty() {
        return Err(parse_err(2, "no data rows".into()));
    }
    Ok(Signal::new(times, values, dim)?)
}

pub fn write_signal(path: &Path, signal: &Signal) -> Result<()> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut out = BufWriter::new(file);
    let row = |out: &mut BufWriter<File>| -> std::io::Result<()> {
        write!(out, "time")?;
        for q in 0..signal.dim() {
            write!(out, ",f{q}")?;
        }
        writeln!(out)?;
        for (i, t) in signal.times().iter().enumerate() {
            write!(out, "{t}")?;
            for v in signal.row(i) {
                write!(out, ",{v}")?;
            }
            writeln!(out)?;
        }
        out.flush()
    };
    row(&mut out).map_err(|e| CliError::io(path, e))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentJson {
    pub c: Vec<f64>,
    pub m: Vec<f64>,
    pub start: usize,
    pub end: usize,
}

/// Output of the `segment` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentResult {
    pub algorithm: String,
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub change_points: Vec<usize>,
    pub change_times: Vec<f64>,
    pub segments: Vec<SegmentJson>,
    pub cost: f64,
    pub elapsed_seconds: Option<f64>,
}

impl SegmentResult {
    pub fn new(algorithm: &str, signal: &Signal, f: &KSegment, cost: f64, elapsed_seconds: Option<f64>) -> Self {
        let change_points = f.change_points();
        Self {
            algorithm: algorithm.to_string(),
            n: signal.len(),
            d: signal.dim(),
            k: f.k(),
            change_times: change_points.iter().map(|&i| signal.times()[i]).collect(),
            change_points,
            segments: f
                .segments()
                .iter()
                .map(|s| SegmentJson { c: s.intercept.clone(), m: s.slope.clone(), start: s.start, end: s.end })
                .collect(),
            cost,
            elapsed_seconds,
        }
    }
}

/// Any JSON document carrying `n` and `change_points`; segment results qualify.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChangePointFile {
    pub n: usize,
    pub change_points: Vec<usize>,
}

/// Spec fields recorded per corpus item.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecJson {
    pub poly_degree_max: usize,
    pub nonlinear_scale: f64,
    pub noise_sigma: f64,
    pub trig_amp: f64,
    pub trig_freq: (f64, f64),
    pub impulse_prob: f64,
    pub impulse_amp: f64,
    pub min_segment_frac: f64,
}

impl From<&kseg::SynthSpec> for SpecJson {
    fn from(s: &kseg::SynthSpec) -> Self {
        Self {
            poly_degree_max: s.poly_degree_max,
            nonlinear_scale: s.nonlinear_scale,
            noise_sigma: s.noise_sigma,
            trig_amp: s.trig_amp,
            trig_freq: s.trig_freq,
            impulse_prob: s.impulse_prob,
            impulse_amp: s.impulse_amp,
            min_segment_frac: s.min_segment_frac,
        }
    }
}

/// One line of `manifest.jsonl`. `path` is relative to the manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub path: String,
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub seed: u64,
    pub change_points: Vec<usize>,
    pub spec: SpecJson,
}

pub const MANIFEST: &str = "manifest.jsonl";

pub fn read_manifest(path: &Path) -> Result<Vec<ManifestEntry>> {
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| CliError::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let entry = serde_json::from_str(&line).map_err(|e| CliError::Parse {
            path: path.to_path_buf(),
            line: i as u64 + 1,
            message: e.to_string(),
        })?;
        out.push(entry);
    }
    Ok(out)
}

pub fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("result types serialize");
    text.push('\n');
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e)),
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        line: e.line() as u64,
        message: e.to_string(),
    })
}

pub fn create_dir(path: &Path) -> Result<PathBuf> {
    fs::create_dir_all(path).map_err(|e| CliError::io(path, e))?;
    Ok(path.to_path_buf())
}
