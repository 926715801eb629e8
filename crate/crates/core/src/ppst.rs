//! Persistent modified priority search tree: quadrant queries in time
//! proportional to the output.
//!
//! The skeleton is a complete binary tree over x-ranks (padded with dummy
//! leaves), heap-indexed like [`crate::pst`]. Every node `v` knows the lowest
//! point of its subtree, `min(v)`, and the secondary list `S(v)` of all its
//! subtree's points in increasing `(y, x, id)` order.
//!
//! For the leaf `u` of rank `i`, with root-to-leaf path `P(u)`:
//! * `P_L(u)` holds the distinct points `min(v)`, `v` on `P(u)`, of rank `<= i`;
//! * `L(u)` holds the left children hanging off `P(u)` (where the path turns
//!   right), keyed by their `min`.
//!
//! Both families are versions of two partially persistent lists, produced by
//! one left-to-right sweep over the leaves, so their total size is linear.

use crate::error::{Error, Result};
use crate::geom::{Point, PointId};
use crate::oracle::{IdSet, PointSet};
use crate::plist::PersistentList;
use crate::pst::{key, rank_order, EMPTY};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PpstStats {
    pub list_nodes_visited: u64,
}

#[derive(Debug, Clone)]
pub struct PersistentPst {
    by_rank: Vec<Point>,
    size: usize,
    height: u32,
    /// Rank of `min(v)`, or `EMPTY` for all-dummy subtrees.
    min_rank: Vec<u32>,
    secondary: Vec<u32>,
    secondary_start: Vec<u32>,
    /// Leaf (heap index) for each x-rank.
    leaf_of_rank: Vec<u32>,
    /// Items are x-ranks.
    path_lists: PersistentList,
    /// Items are heap indices of tree nodes.
    left_lists: PersistentList,
}

impl PersistentPst {
    pub fn build(s: &PointSet) -> Result<Self> {
        Self::from_points(s.points())
    }

    pub fn from_points(points: &[Point]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        let by_rank = rank_order(points);
        let n = by_rank.len();
        let size = n.next_power_of_two();
        let height = size.trailing_zeros();

        let mut min_rank = vec![EMPTY; 2 * size];
        for r in 0..n {
            min_rank[size + r] = r as u32;
        }
        for v in (1..size).rev() {
            let (l, r) = (min_rank[2 * v], min_rank[2 * v + 1]);
            min_rank[v] = match (l, r) {
                (EMPTY, x) | (x, EMPTY) => x,
                (l, r) if key(&by_rank[l as usize]) <= key(&by_rank[r as usize]) => l,
                (_, r) => r,
            };
        }

        // S(v) by merging children level by level, stored flat.
        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); 2 * size];
        for r in 0..n {
            lists[size + r] = vec![r as u32];
        }
        for v in (1..size).rev() {
            let (a, b) = (&lists[2 * v], &lists[2 * v + 1]);
            let mut merged = Vec::with_capacity(a.len() + b.len());
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                if key(&by_rank[a[i] as usize]) <= key(&by_rank[b[j] as usize]) {
                    merged.push(a[i]);
                    i += 1;
                } else {
                    merged.push(b[j]);
                    j += 1;
                }
            }
            merged.extend_from_slice(&a[i..]);
            merged.extend_from_slice(&b[j..]);
            lists[v] = merged;
        }
        let mut secondary = Vec::new();
        let mut secondary_start = Vec::with_capacity(2 * size + 1);
        for l in &lists {
            secondary_start.push(secondary.len() as u32);
            secondary.extend_from_slice(l);
        }
        secondary_start.push(secondary.len() as u32);
        drop(lists);

        let mut t = PersistentPst {
            leaf_of_rank: (0..n).map(|r| (size + r) as u32).collect(),
            by_rank,
            size,
            height,
            min_rank,
            secondary,
            secondary_start,
            path_lists: PersistentList::new(),
            left_lists: PersistentList::new(),
        };
        t.sweep();
        Ok(t)
    }

    fn rank_key(&self, r: u32) -> (i64, i64, u64) {
        key(&self.by_rank[r as usize])
    }

    /// The `P_L` and `L` contents of the leaf of rank `i`, computed directly
    /// from the tree: `(ranks, nodes)`, both sorted by key.
    fn lists_at(&self, i: usize) -> (Vec<u32>, Vec<u32>) {
        let leaf = self.size + i;
        let mut pl = Vec::new();
        let mut l = Vec::new();
        for depth in 0..=self.height {
            let v = leaf >> (self.height - depth);
            let m = self.min_rank[v];
            if m != EMPTY && m as usize <= i && !pl.contains(&m) {
                pl.push(m);
            }
            if depth < self.height && (leaf >> (self.height - depth - 1)) & 1 == 1 {
                let left = 2 * v;
                if self.min_rank[left] != EMPTY {
                    l.push(left as u32);
                }
            }
        }
        pl.sort_unstable_by_key(|&r| self.rank_key(r));
        l.sort_unstable_by_key(|&v| self.rank_key(self.min_rank[v as usize]));
        (pl, l)
    }

    fn sweep(&mut self) {
        let (mut prev_pl, mut prev_l) = (Vec::new(), Vec::new());
        for i in 0..self.by_rank.len() {
            let (pl, l) = self.lists_at(i);
            for r in prev_pl.iter().filter(|r| !pl.contains(r)) {
                self.path_lists.remove(self.rank_key(*r));
            }
            for r in pl.iter().filter(|r| !prev_pl.contains(r)) {
                self.path_lists.insert(self.rank_key(*r), *r);
            }
            for v in prev_l.iter().filter(|v| !l.contains(v)) {
                self.left_lists
                    .remove(self.rank_key(self.min_rank[*v as usize]));
            }
            for v in l.iter().filter(|v| !prev_l.contains(v)) {
                self.left_lists
                    .insert(self.rank_key(self.min_rank[*v as usize]), *v);
            }
            self.path_lists.commit();
            self.left_lists.commit();
            (prev_pl, prev_l) = (pl, l);
        }
    }

    pub fn len(&self) -> usize {
        self.by_rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_rank.is_empty()
    }

    pub fn leaf_count(&self) -> usize {
        self.size
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Persistent-list nodes allocated during the sweep.
    pub fn allocations(&self) -> usize {
        self.path_lists.allocations() + self.left_lists.allocations()
    }

    pub fn point_at_rank(&self, r: usize) -> &Point {
        &self.by_rank[r]
    }

    /// Number of points with `x <= b`; the leaf of rank `count - 1` is the
    /// end of the search path for `b`.
    pub fn rank_count(&self, b: i64) -> usize {
        self.by_rank.partition_point(|p| p.x <= b)
    }

    pub fn leaf_of_rank(&self, r: usize) -> usize {
        self.leaf_of_rank[r] as usize
    }

    /// `min(v)` for heap index `v`.
    pub fn node_min(&self, v: usize) -> Option<&Point> {
        let r = *self.min_rank.get(v)?;
        (r != EMPTY).then(|| &self.by_rank[r as usize])
    }

    /// `S(v)` as x-ranks, sorted by `(y, x, id)`.
    pub fn secondary_ranks(&self, v: usize) -> &[u32] {
        &self.secondary[self.secondary_start[v] as usize..self.secondary_start[v + 1] as usize]
    }

    pub fn secondary(&self, v: usize) -> impl Iterator<Item = &Point> + '_ {
        self.secondary_ranks(v)
            .iter()
            .map(|&r| &self.by_rank[r as usize])
    }

    /// Persistent version of `P_L` for the leaf of rank `r`, as points.
    pub fn path_list(&self, r: usize) -> Vec<Point> {
        self.path_lists
            .iter(r)
            .map(|(_, rank)| self.by_rank[rank as usize])
            .collect()
    }

    /// Persistent version of `L` for the leaf of rank `r`, as heap indices.
    pub fn left_list(&self, r: usize) -> Vec<usize> {
        self.left_lists.iter(r).map(|(_, v)| v as usize).collect()
    }

    pub fn query(&self, b: i64, c: i64) -> (IdSet, PpstStats) {
        let mut out = Vec::new();
        let stats = self.query_into(b, c, &mut out);
        (out.into_iter().collect(), stats)
    }

    /// Appends matching ids to `out`. A point may be appended more than once
    /// (it can sit in both `P_L` and some `S(v)`).
    pub fn query_into(&self, b: i64, c: i64, out: &mut Vec<PointId>) -> PpstStats {
        let mut stats = PpstStats::default();
        let r = self.rank_count(b);
        if r == 0 {
            return stats;
        }
        let version = self.leaf_of_rank(r - 1) - self.size;
        for ((y, _, id), _) in self.path_lists.iter(version) {
            stats.list_nodes_visited += 1;
            if y > c {
                break;
            }
            out.push(id);
        }
        for ((y, _, _), v) in self.left_lists.iter(version) {
            stats.list_nodes_visited += 1;
            if y > c {
                break;
            }
            for p in self.secondary(v as usize) {
                stats.list_nodes_visited += 1;
                if p.y > c {
                    break;
                }
                out.push(p.id);
            }
        }
        stats
    }
}

pub fn ppst_build(s: &PointSet) -> Result<PersistentPst> {
    PersistentPst::build(s)
}

pub fn ppst_query(p: &PersistentPst, b: i64, c: i64) -> (IdSet, PpstStats) {
    p.query(b, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::scan_quadrant;

    #[test]
    fn single_point() {
        let s = PointSet::from_coords(&[(4, 4)]).unwrap();
        let t = ppst_build(&s).unwrap();
        assert_eq!(t.path_list(0), vec![Point::new(0, 4, 4)]);
        assert!(t.left_list(0).is_empty());
        assert_eq!(t.query(4, 4).0, IdSet::from([0]));
        assert!(t.query(3, 4).0.is_empty());
    }

    #[test]
    fn diagonal_versions_match_direct_lists() {
        let s = PointSet::from_coords(&[(1, 1), (2, 2), (3, 3), (4, 4)]).unwrap();
        let t = ppst_build(&s).unwrap();
        // Leaf ranks 0..4 under root 1, internal nodes 2, 3, leaves 4..8.
        let expect_pl: [&[i64]; 4] = [&[1], &[1, 2], &[1, 3], &[1, 3, 4]];
        let expect_l: [&[usize]; 4] = [&[], &[4], &[2], &[2, 6]];
        for r in 0..4 {
            let xs: Vec<i64> = t.path_list(r).iter().map(|p| p.x).collect();
            assert_eq!(xs, expect_pl[r], "P_L rank {r}");
            assert_eq!(t.left_list(r), expect_l[r], "L rank {r}");
        }
    }

    #[test]
    fn small_queries_and_cutoff() {
        let coords: Vec<(i64, i64)> = (0..29).map(|i| (i * 5 % 29, i * 13 % 29)).collect();
        let s = PointSet::from_coords(&coords).unwrap();
        let t = ppst_build(&s).unwrap();
        let (ids, stats) = t.query(100, -1);
        assert!(ids.is_empty());
        assert!(stats.list_nodes_visited <= 2);
        assert_eq!(t.query(100, 100).0, s.ids());
        for b in -1..30 {
            for c in [-1, 0, 3, 14, 28] {
                let (ids, stats) = t.query(b, c);
                assert_eq!(ids, scan_quadrant(&s, b, c));
                assert!(stats.list_nodes_visited <= 4 * (ids.len() as u64 + 2));
            }
        }
    }
}
