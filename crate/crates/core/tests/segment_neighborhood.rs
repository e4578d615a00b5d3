// SPDX-License-Identifier: MIT OR Apache-2.0

mod common;

use common::*;
use kseg::baselines::segment_neighborhood_cost;
use kseg::stats::partition_cost;
use kseg::*;

fn enumerate_best(s: &Signal, k: usize, min_size: usize) -> (Vec<usize>, f64) {
    let mut best = (Vec::new(), f64::INFINITY);
    for cps in all_change_points(s.len(), k, min_size) {
        let c = brute_partition_cost(s, &cps);
        if c < best.1 {
            best = (cps, c);
        }
    }
    best
}

#[test]
fn enumeration_oracle_n12_k3() {
    assert_eq!(all_change_points(12, 3, 1).len(), 55); // C(11, 2)
    for seed in 0..10 {
        let s = random_signal(12, 2, 40 + seed);
        let p = build_prefix_stats(&s);
        let (oracle_cps, oracle_cost) = enumerate_best(&s, 3, 2);
        let (cps, cost) = segment_neighborhood_cost(&p, 3, 2).unwrap();
        assert_eq!(cps, oracle_cps);
        assert!(rel_close(cost, oracle_cost, 1e-9));
        let out = segment_neighborhood(&s, &p, 3, 2).unwrap();
        assert_eq!(out.change_points(), oracle_cps);
    }
}

#[test]
fn exact_for_every_min_size() {
    for (seed, min_size) in [(1, 1), (2, 3), (3, 4)] {
        let s = random_signal(14, 1, seed);
        let p = build_prefix_stats(&s);
        let (oracle_cps, oracle_cost) = enumerate_best(&s, 3, min_size);
        let (cps, cost) = segment_neighborhood_cost(&p, 3, min_size).unwrap();
        assert_eq!(cps, oracle_cps);
        assert!(rel_close(cost, oracle_cost, 1e-9));
    }
}

#[test]
fn reported_cost_matches_partition() {
    let s = random_signal(80, 3, 6);
    let p = build_prefix_stats(&s);
    let (cps, cost) = segment_neighborhood_cost(&p, 5, 2).unwrap();
    assert!(rel_close(cost, partition_cost(&p, &cps), 1e-12));
}

#[test]
fn recovers_noise_free_breaks() {
    let breaks = [17, 40, 41 + 22, 100];
    let s = piecewise_linear(130, 2, &breaks, 21);
    let p = build_prefix_stats(&s);
    let out = segment_neighborhood(&s, &p, 5, 2).unwrap();
    assert_eq!(out.change_points(), breaks.to_vec());
    assert!(ksegment_cost(&s, &out).unwrap() < 1e-12);
}
