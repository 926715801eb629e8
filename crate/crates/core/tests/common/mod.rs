//! Structural checkers shared by the property suites and the acceptance run.

#![allow(dead_code)]

use std::collections::HashMap;

use polyret::layers::LayerStructure;
use polyret::ppst::PersistentPst;
use polyret::pst::PrioritySearchTree;
use polyret::{Point, PointSet, QueryLine};

pub fn key(p: &Point) -> (i64, i64, u64) {
    (p.y, p.x, p.id)
}

/// Rank range `[lo, hi)` covered by heap node `v` in a tree with `size` leaves.
pub fn node_range(v: usize, size: usize) -> (usize, usize) {
    let depth = usize::BITS - 1 - v.leading_zeros();
    let width = size >> depth;
    let lo = (v - (1 << depth)) * width;
    (lo, lo + width)
}

pub fn check_pst(s: &PointSet) {
    let t = PrioritySearchTree::build(s).unwrap();
    let size = t.leaf_count();
    let mut by_rank: Vec<Point> = s.points().to_vec();
    by_rank.sort_by_key(|p| (p.x, p.id));
    let mut stored = vec![0u32; s.len()];
    for v in 1..2 * size {
        let Some(r) = t.node_rank(v) else {
            // An empty node has an empty subtree below it.
            if v < size {
                assert!(t.node_rank(2 * v).is_none() && t.node_rank(2 * v + 1).is_none());
            }
            continue;
        };
        stored[r] += 1;
        let (lo, hi) = node_range(v, size);
        assert!(lo <= r && r < hi, "search property at node {v}");
        let p = t.node_point(v).unwrap();
        assert_eq!(*p, by_rank[r]);
        if v < size {
            for c in [2 * v, 2 * v + 1] {
                if let Some(q) = t.node_point(c) {
                    assert!(key(p) < key(q), "heap property at node {v}");
                }
            }
        }
    }
    assert!(stored.iter().all(|&c| c == 1), "each point stored once");
}

/// `P_L` and `L` of every leaf, derived from the public tree view.
pub fn direct_lists(t: &PersistentPst) -> Vec<(Vec<u64>, Vec<usize>)> {
    let n = t.len();
    let size = t.leaf_count();
    let rank_of: HashMap<u64, usize> = (0..n).map(|r| (t.point_at_rank(r).id, r)).collect();
    (0..n)
        .map(|i| {
            let leaf = t.leaf_of_rank(i);
            assert_eq!(leaf, size + i);
            let path: Vec<usize> = (0..=t.height()).rev().map(|s| leaf >> s).collect();
            let mut pl: Vec<Point> = path
                .iter()
                .filter_map(|&v| t.node_min(v).copied())
                .filter(|p| rank_of[&p.id] <= i)
                .collect();
            pl.sort_by_key(key);
            pl.dedup();
            let mut l: Vec<usize> = path
                .windows(2)
                .filter(|w| w[1] == 2 * w[0] + 1 && t.node_min(2 * w[0]).is_some())
                .map(|w| 2 * w[0])
                .collect();
            l.sort_by_key(|&v| key(t.node_min(v).unwrap()));
            (pl.iter().map(|p| p.id).collect(), l)
        })
        .collect()
}

pub fn check_ppst(s: &PointSet) {
    let t = PersistentPst::build(s).unwrap();
    let size = t.leaf_count();
    // S(v) and min(v) against the subtree's rank range.
    for v in 1..2 * size {
        let (lo, hi) = node_range(v, size);
        let mut sub: Vec<Point> = (lo..hi.min(t.len())).map(|r| *t.point_at_rank(r)).collect();
        sub.sort_by_key(key);
        let got: Vec<Point> = t.secondary(v).copied().collect();
        assert_eq!(got, sub, "S({v})");
        assert_eq!(t.node_min(v).copied(), sub.first().copied());
    }
    for (r, (pl, l)) in direct_lists(&t).into_iter().enumerate() {
        let got: Vec<u64> = t.path_list(r).iter().map(|p| p.id).collect();
        assert_eq!(got, pl, "P_L at rank {r}");
        assert_eq!(t.left_list(r), l, "L at rank {r}");
    }
}

fn cross(o: &Point, a: &Point, b: &Point) -> i128 {
    (a.x - o.x) as i128 * (b.y - o.y) as i128 - (a.y - o.y) as i128 * (b.x - o.x) as i128
}

/// Is `p` in the closed region of the counterclockwise ring?
pub fn inside_closed(ring: &[Point], p: &Point) -> bool {
    match ring.len() {
        1 => ring[0].xy() == p.xy(),
        2 => {
            cross(&ring[0], &ring[1], p) == 0
                && ring[0].x.min(ring[1].x) <= p.x
                && p.x <= ring[0].x.max(ring[1].x)
                && ring[0].y.min(ring[1].y) <= p.y
                && p.y <= ring[0].y.max(ring[1].y)
        }
        k => (0..k).all(|i| cross(&ring[i], &ring[(i + 1) % k], p) >= 0),
    }
}

/// Layers partition the input, each ring is strictly convex and
/// counterclockwise, and each lies inside its parent.
pub fn check_layers(s: &PointSet) {
    let ls = LayerStructure::build(s).unwrap();
    let mut all: Vec<u64> = ls.layers().flat_map(|l| l.iter().map(|p| p.id)).collect();
    all.sort_unstable();
    let mut want: Vec<u64> = s.points().iter().map(|p| p.id).collect();
    want.sort_unstable();
    assert_eq!(all, want, "layers partition the points");
    for i in 0..ls.layer_count() {
        let ring = ls.layer(i);
        let k = ring.len();
        if k >= 3 {
            for j in 0..k {
                assert!(cross(&ring[j], &ring[(j + 1) % k], &ring[(j + 2) % k]) > 0);
            }
        }
        if i > 0 {
            let outer = ls.layer(i - 1);
            assert!(
                ring.iter().all(|p| inside_closed(outer, p)),
                "layer {i} escapes"
            );
        }
    }
}

/// Does the line meet the closed segment? Decided by the segment's
/// parametric crossing point, without duality.
pub fn line_meets_segment(l: &QueryLine, p: (i64, i64), q: (i64, i64)) -> bool {
    let f =
        |v: (i64, i64)| l.a() as i128 * v.0 as i128 + l.b() as i128 * v.1 as i128 + l.c() as i128;
    let (fp, fq) = (f(p), f(q));
    if fp == fq {
        return fp == 0;
    }
    // f(p + t (q - p)) = fp + t (fq - fp) = 0 at t = fp / (fp - fq); need 0 <= t <= 1.
    let (num, den) = if fp - fq > 0 {
        (fp, fp - fq)
    } else {
        (-fp, fq - fp)
    };
    0 <= num && num <= den
}
