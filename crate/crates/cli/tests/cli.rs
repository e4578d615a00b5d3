// SPDX-License-Identifier: MIT OR Apache-2.0

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use kseg_cli::io::{read_manifest, SegmentResult};

fn kseg(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kseg")).args(args).current_dir(cwd).output().expect("binary runs")
}

fn ok(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn noise_free_corpus(dir: &Path, count: &str) {
    ok(&kseg(
        &[
            "generate",
            "-o",
            "corpus",
            "--count",
            count,
            "--seed",
            "3",
            "--noise-free",
            "--n-min",
            "100",
            "--n-max",
            "600",
            "--k-max",
            "5",
            "--d-max",
            "4",
        ],
        dir,
    ));
}

#[test]
fn one_segment_cost_matches_interval_cost() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("s.csv"), "time,f0,f1\n0,1,0\n1,3,1\n2,2,5\n3,0,4\n").unwrap();
    let text = ok(&kseg(&["segment", "-i", "s.csv", "-k", "1", "--algo", "sn"], dir.path()));
    let r: SegmentResult = serde_json::from_str(&text).unwrap();
    let s = kseg::Signal::from_rows(&[vec![1.0, 0.0], vec![3.0, 1.0], vec![2.0, 5.0], vec![0.0, 4.0]]).unwrap();
    let expected = kseg::interval_cost(&kseg::build_prefix_stats(&s), 0, 4).unwrap();
    assert!((r.cost - expected).abs() < 1e-12);
    assert_eq!(r.segments.len(), 1);
    assert!(r.change_points.is_empty());
    assert!(r.elapsed_seconds.is_some());
}

#[test]
fn infeasible_k_exits_with_2() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("s.csv"), "time,f0\n0,1\n1,2\n2,3\n3,4\n").unwrap();
    let out = kseg(&["segment", "-i", "s.csv", "-k", "3", "--algo", "lm"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("infeasible k"));
}

#[test]
fn malformed_input_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("s.csv"), "time,f0\n0,1\n1,2\n2,oops\n").unwrap();
    let out = kseg(&["segment", "-i", "s.csv", "-k", "1"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
    let out = kseg(&["segment", "-i", "missing.csv", "-k", "1"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let out = kseg(&["segment", "-i", "s.csv", "-k", "1", "--algo", "kmeans"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generate_is_byte_identical_and_in_range() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "generate", "--count", "4", "--seed", "9", "--n-min", "50", "--n-max", "2000", "--k-min", "2", "--k-max", "10",
    ];
    ok(&kseg(&[&args[..], &["-o", "a"]].concat(), dir.path()));
    ok(&kseg(&[&args[..], &["-o", "b"]].concat(), dir.path()));
    for name in ["manifest.jsonl", "signal_0000.csv", "signal_0003.csv"] {
        assert_eq!(
            fs::read(dir.path().join("a").join(name)).unwrap(),
            fs::read(dir.path().join("b").join(name)).unwrap()
        );
    }
    let entries = read_manifest(&dir.path().join("a/manifest.jsonl")).unwrap();
    assert_eq!(entries.len(), 4);
    for e in entries {
        assert!((50..=2000).contains(&e.n) && (2..=10).contains(&e.k));
        assert_eq!(e.change_points.len() + 1, e.k);
    }
    let out = kseg(&["generate", "-o", "c", "--k-min", "5", "--k-max", "3"], dir.path());
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn round_trip_on_noise_free_corpus_scores_one() {
    let dir = tempfile::tempdir().unwrap();
    noise_free_corpus(dir.path(), "3");
    let entries = read_manifest(&dir.path().join("corpus/manifest.jsonl")).unwrap();
    for (i, e) in entries.iter().enumerate() {
        let input = format!("corpus/{}", e.path);
        let k = e.k.to_string();
        for algo in ["sn", "lm-botup"] {
            ok(&kseg(&["segment", "-i", &input, "-k", &k, "--algo", algo, "-o", "r.json"], dir.path()));
            let text = ok(&kseg(
                &["eval", "-p", "r.json", "-t", "corpus/manifest.jsonl", "--entry", &i.to_string()],
                dir.path(),
            ));
            assert_eq!(text, "covering 1\nrand_index 1\n", "{algo} on {}", e.path);
        }
    }
}

#[test]
fn eval_worked_examples_and_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    fs::write(p.join("t.json"), r#"{"n":10,"change_points":[5]}"#).unwrap();
    fs::write(p.join("p.json"), r#"{"n":10,"change_points":[6]}"#).unwrap();
    fs::write(p.join("e.json"), r#"{"n":10,"change_points":[]}"#).unwrap();
    fs::write(p.join("m.json"), r#"{"n":11,"change_points":[5]}"#).unwrap();
    assert_eq!(ok(&kseg(&["eval", "-p", "t.json", "-t", "t.json"], p)), "covering 1\nrand_index 1\n");
    let text = ok(&kseg(&["eval", "-p", "p.json", "-t", "t.json"], p));
    let nums: Vec<f64> = text.lines().map(|l| l.split(' ').nth(1).unwrap().parse().unwrap()).collect();
    assert!((nums[0] - 0.816_666_666_666_666_7).abs() < 1e-12 && (nums[1] - 0.8).abs() < 1e-12);
    let text = ok(&kseg(&["eval", "-p", "e.json", "-t", "t.json"], p));
    assert!(text.starts_with("covering 0.5\n"));
    assert_eq!(kseg(&["eval", "-p", "m.json", "-t", "t.json"], p).status.code(), Some(2));
}

#[test]
fn bench_outputs() {
    let dir = tempfile::tempdir().unwrap();
    noise_free_corpus(dir.path(), "6");
    let args = ["bench", "-c", "corpus", "--algos", "sn,lm-botup,botup", "--baseline", "sn"];
    ok(&kseg(&[&args[..], &["-o", "a", "--jobs", "2"]].concat(), dir.path()));
    let runs = fs::read_to_string(dir.path().join("a/runs.csv")).unwrap();
    let lines: Vec<&str> = runs.lines().collect();
    assert_eq!(lines.len(), 1 + 6 * 3);
    let order: Vec<(&str, &str)> = lines[1..]
        .iter()
        .map(|l| {
            let mut f = l.split(',');
            (f.next().unwrap(), f.next().unwrap())
        })
        .collect();
    let mut sorted = order.clone();
    sorted.sort_by_key(|(s, a)| (s.to_string(), ["sn", "lm-botup", "botup"].iter().position(|x| x == a)));
    assert_eq!(order, sorted);

    let mut summary = csv::Reader::from_path(dir.path().join("a/summary.csv")).unwrap();
    let headers = summary.headers().unwrap().clone();
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    for rec in summary.records() {
        let rec = rec.unwrap();
        let rel_cost: f64 = rec[col("rel_cost")].parse().unwrap();
        match &rec[col("algorithm")] {
            "sn" => {
                assert_eq!(&rec[col("rel_runtime")], "1.0");
                assert_eq!(rel_cost, 1.0);
            }
            "lm-botup" => assert!((1.0..=1.05).contains(&rel_cost)),
            _ => {}
        }
    }
    let cdf = fs::read_to_string(dir.path().join("a/cdf.csv")).unwrap();
    assert!(cdf.starts_with("deficit,fraction,algorithm,metric\n"));

    ok(&kseg(&[&args[..], &["-o", "b", "--no-timing", "--jobs", "3"]].concat(), dir.path()));
    ok(&kseg(&[&args[..], &["-o", "c", "--no-timing", "--jobs", "1"]].concat(), dir.path()));
    for name in ["runs.csv", "summary.csv", "cdf.csv"] {
        assert_eq!(
            fs::read(dir.path().join("b").join(name)).unwrap(),
            fs::read(dir.path().join("c").join(name)).unwrap()
        );
    }
    let out = kseg(&["bench", "-c", "corpus", "--algos", "lm", "--baseline", "sn", "-o", "d"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = kseg(&["bench", "-c", "nowhere", "-o", "d"], dir.path());
    assert_eq!(out.status.code(), Some(1));
}
