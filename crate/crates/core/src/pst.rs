//! Priority search tree for quadrant queries `(-inf, b] x (-inf, c]`.
//!
//! A complete binary tree over x-ranks, heap-indexed (root 1, children `2v`
//! and `2v + 1`, leaf of rank `r` at `size + r`). Each node stores at most one
//! point: the lowest (by `(y, x, id)`) of the points in its rank range that no
//! ancestor has already taken.

use crate::error::{Error, Result};
use crate::geom::{Point, PointId};
use crate::oracle::{IdSet, PointSet};

pub(crate) const EMPTY: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PstStats {
    pub nodes_visited: u64,
}

#[derive(Debug, Clone)]
pub struct PrioritySearchTree {
    by_rank: Vec<Point>,
    size: usize,
    height: u32,
    slots: Vec<u32>,
}

#[inline]
pub(crate) fn key(p: &Point) -> (i64, i64, PointId) {
    (p.y, p.x, p.id)
}

/// Points ordered by `(x, id)`; position is the x-rank.
pub(crate) fn rank_order(points: &[Point]) -> Vec<Point> {
    let mut v = points.to_vec();
    v.sort_unstable_by_key(|p| (p.x, p.id));
    v
}

impl PrioritySearchTree {
    pub fn build(s: &PointSet) -> Result<Self> {
        Self::from_points(s.points())
    }

    pub fn from_points(points: &[Point]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        let by_rank = rank_order(points);
        let size = by_rank.len().next_power_of_two();
        let mut t = PrioritySearchTree {
            height: size.trailing_zeros(),
            by_rank,
            size,
            slots: vec![EMPTY; 2 * size],
        };
        let all: Vec<u32> = (0..t.by_rank.len() as u32).collect();
        t.fill(1, 0, size, all);
        Ok(t)
    }

    /// `ranks` are the unplaced points in `[lo, hi)`, ascending.
    fn fill(&mut self, v: usize, lo: usize, hi: usize, mut ranks: Vec<u32>) {
        let Some(best) = (0..ranks.len()).min_by_key(|&i| key(&self.by_rank[ranks[i] as usize]))
        else {
            return;
        };
        self.slots[v] = ranks.remove(best);
        if hi - lo == 1 {
            return;
        }
        let mid = (lo + hi) / 2;
        let split = ranks.partition_point(|&r| (r as usize) < mid);
        let right = ranks.split_off(split);
        self.fill(2 * v, lo, mid, ranks);
        self.fill(2 * v + 1, mid, hi, right);
    }

    pub fn len(&self) -> usize {
        self.by_rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_rank.is_empty()
    }

    /// Number of leaves (a power of two).
    pub fn leaf_count(&self) -> usize {
        self.size
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Point stored at heap index `v`, if any.
    pub fn node_point(&self, v: usize) -> Option<&Point> {
        let r = *self.slots.get(v)?;
        (r != EMPTY).then(|| &self.by_rank[r as usize])
    }

    /// x-rank of the point stored at `v`.
    pub fn node_rank(&self, v: usize) -> Option<usize> {
        let r = *self.slots.get(v)?;
        (r != EMPTY).then_some(r as usize)
    }

    pub fn root(&self) -> Option<&Point> {
        self.node_point(1)
    }

    pub fn query(&self, b: i64, c: i64) -> (IdSet, PstStats) {
        let mut out = Vec::new();
        let stats = self.query_into(b, c, &mut out);
        (out.into_iter().collect(), stats)
    }

    pub fn query_into(&self, b: i64, c: i64, out: &mut Vec<PointId>) -> PstStats {
        let mut stats = PstStats::default();
        let r = self.by_rank.partition_point(|p| p.x <= b);
        if r == 0 {
            return stats;
        }
        let leaf = self.size + r - 1;
        for depth in 0..=self.height {
            let v = leaf >> (self.height - depth);
            stats.nodes_visited += 1;
            let slot = self.slots[v];
            if slot == EMPTY {
                break;
            }
            let p = &self.by_rank[slot as usize];
            if p.y > c {
                break;
            }
            if (slot as usize) < r {
                out.push(p.id);
            }
            if depth < self.height && (leaf >> (self.height - depth - 1)) & 1 == 1 {
                self.report_subtree(2 * v, c, out, &mut stats);
            }
        }
        stats
    }

    /// Heap-pruned report of a subtree lying entirely left of the query.
    fn report_subtree(&self, v: usize, c: i64, out: &mut Vec<PointId>, stats: &mut PstStats) {
        stats.nodes_visited += 1;
        let slot = self.slots[v];
        if slot == EMPTY {
            return;
        }
        let p = &self.by_rank[slot as usize];
        if p.y > c {
            return;
        }
        out.push(p.id);
        if v < self.size {
            self.report_subtree(2 * v, c, out, stats);
            self.report_subtree(2 * v + 1, c, out, stats);
        }
    }
}

pub fn pst_build(s: &PointSet) -> Result<PrioritySearchTree> {
    PrioritySearchTree::build(s)
}

pub fn pst_query(t: &PrioritySearchTree, b: i64, c: i64) -> (IdSet, PstStats) {
    t.query(b, c)
}
