// SPDX-License-Identifier: MIT OR Apache-2.0

use std::path::Path;

use kseg::{covering_score, generate_corpus, rand_index, ChangePointSet, SynthSpec};

use crate::algo;
use crate::args::{EvalArgs, GenerateArgs, SegmentArgs};
use crate::error::{CliError, Result};
use crate::io::{self, ChangePointFile, ManifestEntry, SegmentResult, SpecJson};

pub fn segment(args: &SegmentArgs) -> Result<SegmentResult> {
    let signal = io::read_signal(&args.input)?;
    let outcome = algo::run(args.algo, &signal, args.k, &args.options)?;
    let elapsed = (!args.no_timing).then_some(outcome.seconds);
    let result = SegmentResult::new(args.algo.name(), &signal, &outcome.segmentation, outcome.cost, elapsed);
    io::write_json(args.output.as_deref(), &result)?;
    Ok(result)
}

fn synth_spec(args: &GenerateArgs) -> SynthSpec {
    let spec = SynthSpec {
        poly_degree_max: args.poly_degree,
        nonlinear_scale: args.nonlinear_scale,
        noise_sigma: args.noise_sigma,
        trig_amp: args.trig_amp,
        trig_freq: (args.trig_freq_min, args.trig_freq_max),
        impulse_prob: args.impulse_prob,
        impulse_amp: args.impulse_amp,
        min_segment_frac: args.min_segment_frac,
        ..SynthSpec::default()
    };
    if args.noise_free {
        spec.noise_free()
    } else {
        spec
    }
}

pub fn generate(args: &GenerateArgs) -> Result<Vec<ManifestEntry>> {
    for (name, lo, hi) in [("n", args.n_min, args.n_max), ("k", args.k_min, args.k_max), ("d", args.d_min, args.d_max)]
    {
        if lo > hi {
            return Err(CliError::Usage(format!("invalid {name} range: min {lo} > max {hi}")));
        }
    }
    let base = synth_spec(args);
    let items = generate_corpus(
        &base,
        args.count,
        args.n_min..=args.n_max,
        args.k_min..=args.k_max,
        args.d_min..=args.d_max,
        args.seed,
    )?;
    let dir = io::create_dir(&args.out_dir)?;
    let mut manifest = String::new();
    let mut entries = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let name = format!("signal_{i:04}.csv");
        io::write_signal(&dir.join(&name), &item.signal)?;
        let entry = ManifestEntry {
            path: name,
            n: item.signal.len(),
            d: item.signal.dim(),
            k: item.spec.k,
            seed: item.spec.seed,
            change_points: item.truth.boundaries().to_vec(),
            spec: SpecJson::from(&item.spec),
        };
        manifest.push_str(&serde_json::to_string(&entry).expect("manifest entries serialize"));
        manifest.push('\n');
        entries.push(entry);
    }
    let path = dir.join(io::MANIFEST);
    std::fs::write(&path, manifest).map_err(|e| CliError::io(&path, e))?;
    Ok(entries)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scores {
    pub covering: f64,
    pub rand: f64,
}

fn load_truth(path: &Path, entry: Option<&str>) -> Result<ChangePointFile> {
    let Some(selector) = entry else {
        return io::read_json(path);
    };
    let entries = io::read_manifest(path)?;
    let found = match selector.parse::<usize>() {
        Ok(i) => entries.get(i),
        Err(_) => entries.iter().find(|e| e.path == selector),
    };
    let e = found.ok_or_else(|| CliError::Usage(format!("no manifest entry `{selector}` in {}", path.display())))?;
    Ok(ChangePointFile { n: e.n, change_points: e.change_points.clone() })
}

pub fn score(pred: &ChangePointFile, truth: &ChangePointFile) -> Result<Scores> {
    if pred.n != truth.n {
        return Err(CliError::Usage(format!("mismatched n: prediction has {}, truth has {}", pred.n, truth.n)));
    }
    let p = ChangePointSet::new(pred.change_points.clone())?;
    let t = ChangePointSet::new(truth.change_points.clone())?;
    Ok(Scores { covering: covering_score(&t, &p, truth.n)?, rand: rand_index(&t, &p, truth.n)? })
}

pub fn eval(args: &EvalArgs) -> Result<Scores> {
    let pred: ChangePointFile = io::read_json(&args.pred)?;
    let truth = load_truth(&args.truth, args.entry.as_deref())?;
    let scores = score(&pred, &truth)?;
    println!("covering {}", scores.covering);
    println!("rand_index {}", scores.rand);
    Ok(scores)
}
