mod common;

use common::{check_ppst, check_pst};
use polyret::oracle::scan_quadrant;
use polyret::ppst::PersistentPst;
use polyret::pst::PrioritySearchTree;
use polyret::workload::{generate_points, Distribution, Workload};
use polyret::PointSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_set(rng: &mut ChaCha8Rng, n: usize, span: i64) -> PointSet {
    let mut seen = std::collections::HashSet::new();
    let mut coords = Vec::new();
    while coords.len() < n {
        let p = (rng.random_range(0..span), rng.random_range(0..span));
        if seen.insert(p) {
            coords.push(p);
        }
    }
    PointSet::from_coords(&coords).unwrap()
}

#[test]
fn pst_invariants_over_many_builds() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let n = rng.random_range(1..120);
        let span = rng.random_range(4..60).max(n as i64);
        check_pst(&random_set(&mut rng, n, span));
    }
    check_pst(&generate_points(5000, 2, Distribution::Clustered));
}

#[test]
fn pst_queries_match_scan_with_bound() {
    let s = generate_points(10_000, 3, Distribution::Uniform);
    let t = PrioritySearchTree::build(&s).unwrap();
    let l = 14;
    let mut w = Workload::new(4);
    for _ in 0..1000 {
        let (b, c) = w.quadrant();
        let (ids, stats) = t.query(b, c);
        assert_eq!(ids, scan_quadrant(&s, b, c));
        assert!(stats.nodes_visited <= 4 * (l + ids.len() as u64 + 1));
    }
}

#[test]
fn ppst_versions_match_direct_lists_exhaustively() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in (1..=256).step_by(17).chain([255, 256]) {
        check_ppst(&random_set(&mut rng, n, 1000));
    }
    check_ppst(&generate_points(256, 6, Distribution::GridMinusDiagonal));
}

#[test]
fn ppst_queries_are_output_sensitive() {
    for d in Distribution::ALL {
        let s = generate_points(4000, 7, d);
        let t = PersistentPst::build(&s).unwrap();
        let mut w = Workload::new(8);
        for _ in 0..500 {
            let (b, c) = w.quadrant();
            let (ids, stats) = t.query(b, c);
            assert_eq!(ids, scan_quadrant(&s, b, c));
            assert!(stats.list_nodes_visited <= 4 * (ids.len() as u64 + 2));
        }
    }
}

#[test]
fn ppst_extreme_queries() {
    let s = generate_points(300, 9, Distribution::Uniform);
    let t = PersistentPst::build(&s).unwrap();
    let (ids, stats) = t.query(i64::MAX, -1);
    assert!(ids.is_empty());
    assert!(stats.list_nodes_visited <= 2);
    assert_eq!(t.query(i64::MAX, i64::MAX).0, s.ids());
}

#[test]
fn ppst_allocations_are_linear() {
    for n in [1000, 5000] {
        let t = PersistentPst::build(&generate_points(n, 10, Distribution::Uniform)).unwrap();
        assert!(
            t.allocations() <= 32 * n,
            "{} allocations for n = {n}",
            t.allocations()
        );
    }
}
