// SPDX-License-Identifier: MIT OR Apache-2.0

use kseg::*;

#[test]
fn noise_free_signal_is_recovered_exactly() {
    for seed in 0..10 {
        let spec = SynthSpec { n: 150, dim: 3, k: 3, seed, ..SynthSpec::default() }.noise_free();
        let (s, truth) = generate(&spec).unwrap();
        let p = build_prefix_stats(&s);
        let fitted = fit_boundaries(&p, truth.boundaries()).unwrap();
        assert!(ksegment_cost(&s, &fitted).unwrap() <= 1e-18 * s.len() as f64 * 1e4);
        let exact = segment_neighborhood(&s, &p, 3, 2).unwrap();
        assert_eq!(exact.change_points(), truth.boundaries());
        assert_eq!(covering_score(&truth, &ChangePointSet::new(exact.change_points()).unwrap(), 150).unwrap(), 1.0);
    }
}

#[test]
fn noise_level_matches_residual_variance() {
    let sigma = 0.7;
    let mut ratio = 0.0;
    let trials = 100;
    for seed in 0..trials {
        let spec = SynthSpec { n: 300, dim: 2, k: 3, seed, ..SynthSpec::default() }.noise_free();
        let spec = SynthSpec { noise_sigma: sigma, ..spec };
        let (s, truth) = generate(&spec).unwrap();
        let p = build_prefix_stats(&s);
        let cost = kseg::stats::partition_cost(&p, truth.boundaries());
        let dof = (s.len() - 2 * (truth.boundaries().len() + 1)) as f64;
        ratio += cost / (sigma * sigma * 2.0 * dof);
    }
    let mean = ratio / trials as f64;
    assert!((mean - 1.0).abs() < 0.3, "mean ratio {mean}");
    assert!((mean - 1.0).abs() < 0.05, "mean ratio {mean}");
}

#[test]
fn corpus_is_reproducible_and_in_range() {
    let base = SynthSpec::default();
    let a = generate_corpus(&base, 40, 50..=2000, 2..=10, 2..=16, 9).unwrap();
    let b = generate_corpus(&base, 40, 50..=2000, 2..=10, 2..=16, 9).unwrap();
    assert_eq!(a, b);
    for item in &a {
        assert!((50..=2000).contains(&item.signal.len()));
        assert!((2..=10).contains(&item.spec.k));
        assert!((2..=16).contains(&item.signal.dim()));
        assert_eq!(item.truth.boundaries().len() + 1, item.spec.k);
        let blocks: Vec<_> = item.truth.blocks(item.signal.len()).collect();
        assert!(blocks.iter().all(|(s, e)| e - s >= item.spec.min_segment_len()));
    }
    let c = generate_corpus(&base, 40, 50..=2000, 2..=10, 2..=16, 10).unwrap();
    assert_ne!(a, c);
}

#[test]
fn two_segment_and_large_corpora() {
    let base = SynthSpec::default();
    let two = generate_corpus(&base, 20, 400..=15000, 2..=2, 2..=16, 1).unwrap();
    assert!(two.iter().all(|i| i.truth.boundaries().len() == 1 && (400..=15000).contains(&i.signal.len())));
    let large = generate_corpus(&base, 3, 4000..=175_000, 2..=10, 2..=4, 2).unwrap();
    assert!(large.iter().all(|i| (4000..=175_000).contains(&i.signal.len())));
}

#[test]
#[allow(clippy::reversed_empty_ranges)]
fn rejects_bad_ranges() {
    let base = SynthSpec::default();
    assert!(generate_corpus(&base, 1, 100..=50, 2..=3, 1..=1, 0).is_err());
    assert!(generate_corpus(&base, 1, 50..=100, 0..=3, 1..=1, 0).is_err());
}
