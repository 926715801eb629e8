//! Persistent priority search tree whose lists carry half-plane structures on
//! every y-ordered prefix.
//!
//! The tree answers south-west triangles natively (`x <= b`, `y <= c`). The
//! other orientations go to twins built on reflected copies of the input.
//!
//! A query finds the leaf `u` for `b`, takes the prefix of `P_L(u)` with
//! `y <= c` and queries its structure, then does the same for `L(u)`. Every
//! node `v` of that `L(u)` prefix has all of `S(v)` inside the x-range, so
//! the prefix of `S(v)` with `y <= c` is queried too. That happens for every
//! such `v`, not only those whose lowest point lies in the half-plane: a
//! subtree can have points under the hypotenuse while its lowest point is
//! above it.

use super::{clip_rect, dissect_rect, Diagonal, TriangleEngine, TriangleStats};
use crate::error::{Error, Result};
use crate::geom::{AxisRect, HalfPlane, OrthoTriangle, Point, PointId, Quadrant};
use crate::layers::{HalfPlaneStats, LayerStructure};
use crate::oracle::PointSet;
use crate::ppst::PersistentPst;

pub const DEFAULT_CAP: usize = 4096;

/// Half-plane structures on every prefix of a y-sorted list.
#[derive(Debug, Clone, Default)]
struct PrefixFamily {
    ys: Vec<i64>,
    /// Parallel to `ys`; for `L(u)` these are the tree nodes.
    items: Vec<u32>,
    /// `prefixes[j]` holds the first `j + 1` points.
    prefixes: Vec<LayerStructure>,
}

impl PrefixFamily {
    fn build(points: &[Point], items: Vec<u32>) -> Self {
        let mut sorted: Vec<Point> = Vec::with_capacity(points.len());
        let prefixes = points
            .iter()
            .map(|p| {
                let at = sorted.partition_point(|q| (q.x, q.y) < (p.x, p.y));
                sorted.insert(at, *p);
                LayerStructure::from_sorted(sorted.clone()).expect("non-empty prefix")
            })
            .collect();
        PrefixFamily {
            ys: points.iter().map(|p| p.y).collect(),
            items,
            prefixes,
        }
    }

    /// Length of the prefix with `y <= c`.
    fn cut(&self, c: i64, stats: &mut TriangleStats) -> usize {
        stats.nodes_visited += probes(self.ys.len());
        self.ys.partition_point(|&y| y <= c)
    }

    /// Half-plane query on the prefix of length `j`.
    fn report(&self, j: usize, h: &HalfPlane, out: &mut Vec<PointId>, stats: &mut TriangleStats) {
        if j == 0 {
            return;
        }
        let mut hs = HalfPlaneStats::default();
        self.prefixes[j - 1].report_into(h, out, &mut hs);
        stats.nodes_visited += hs.vertices_visited;
        stats.substructures_queried += 1;
    }

    fn multiplicity(&self) -> usize {
        self.prefixes.len() * (self.prefixes.len() + 1) / 2
    }
}

fn probes(m: usize) -> u64 {
    (usize::BITS - m.leading_zeros()) as u64
}

/// One orientation: the structure over points mapped by `(x, y) ->
/// (fx * x, fy * y)`, answering south-west queries there.
#[derive(Debug, Clone)]
struct Twin {
    flip: (i64, i64),
    pst: PersistentPst,
    path: Vec<PrefixFamily>,
    left: Vec<PrefixFamily>,
    /// Indexed by heap node; empty for all-dummy subtrees.
    sub: Vec<PrefixFamily>,
}

impl Twin {
    fn build(points: &[Point], flip: (i64, i64)) -> Result<Self> {
        let mapped: Vec<Point> = points
            .iter()
            .map(|p| Point::new(p.id, flip.0 * p.x, flip.1 * p.y))
            .collect();
        let pst = PersistentPst::from_points(&mapped)?;
        let n = pst.len();
        let path = (0..n)
            .map(|r| PrefixFamily::build(&pst.path_list(r), Vec::new()))
            .collect();
        let left = (0..n)
            .map(|r| {
                let nodes = pst.left_list(r);
                let mins: Vec<Point> = nodes.iter().map(|&v| *pst.node_min(v).unwrap()).collect();
                PrefixFamily::build(&mins, nodes.iter().map(|&v| v as u32).collect())
            })
            .collect();
        let sub = (0..2 * pst.leaf_count())
            .map(|v| {
                let s: Vec<Point> = pst.secondary(v).copied().collect();
                PrefixFamily::build(&s, Vec::new())
            })
            .collect();
        Ok(Twin {
            flip,
            pst,
            path,
            left,
            sub,
        })
    }

    fn query(
        &self,
        b: i64,
        c: i64,
        h: &HalfPlane,
        out: &mut Vec<PointId>,
        stats: &mut TriangleStats,
    ) {
        let r = self.pst.rank_count(b);
        stats.nodes_visited += probes(self.pst.len());
        if r == 0 {
            return;
        }
        // Leaf ranks double as version numbers.
        let u = self.pst.leaf_of_rank(r - 1) - self.pst.leaf_count();
        let path = &self.path[u];
        let j = path.cut(c, stats);
        path.report(j, h, out, stats);
        let left = &self.left[u];
        let j = left.cut(c, stats);
        left.report(j, h, out, stats);
        for &v in &left.items[..j] {
            let sub = &self.sub[v as usize];
            let jv = sub.cut(c, stats);
            sub.report(jv, h, out, stats);
        }
    }
}

#[derive(Debug, Clone)]
pub struct TwoLayerStructure {
    len: usize,
    twins: Vec<Twin>,
}

impl TwoLayerStructure {
    pub fn build(s: &PointSet) -> Result<Self> {
        Self::build_with_cap(s, DEFAULT_CAP)
    }

    /// Fails with [`Error::CapExceeded`] when `s` has more than `cap` points;
    /// space grows quadratically.
    pub fn build_with_cap(s: &PointSet, cap: usize) -> Result<Self> {
        let n = s.len();
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if n > cap {
            return Err(Error::CapExceeded { n, cap });
        }
        let twins = [Quadrant::SW, Quadrant::SE, Quadrant::NW, Quadrant::NE]
            .into_iter()
            .map(|q| Twin::build(s.points(), flip_for(q)))
            .collect::<Result<_>>()?;
        Ok(TwoLayerStructure { len: n, twins })
    }

    fn twin(&self, q: Quadrant) -> &Twin {
        let f = flip_for(q);
        self.twins
            .iter()
            .find(|t| t.flip == f)
            .expect("all four twins built")
    }

    /// Points stored across the `S(v)` prefix structures of the south-west
    /// twin: `sum |S(v)| (|S(v)| + 1) / 2`.
    pub fn s_prefix_multiplicity(&self) -> usize {
        self.twin(Quadrant::SW)
            .sub
            .iter()
            .map(PrefixFamily::multiplicity)
            .sum()
    }

    /// Points stored across every prefix structure of all four twins.
    pub fn stored_multiplicity(&self) -> usize {
        self.twins
            .iter()
            .map(|t| {
                t.path
                    .iter()
                    .chain(&t.left)
                    .chain(&t.sub)
                    .map(PrefixFamily::multiplicity)
                    .sum::<usize>()
            })
            .sum()
    }

    /// The `S(v)` prefix structure of length `j` in the south-west twin,
    /// with the points of `S(v)`, for inspection.
    pub fn s_prefix(&self, v: usize, j: usize) -> Option<(&LayerStructure, Vec<Point>)> {
        let t = self.twin(Quadrant::SW);
        let ls = t.sub.get(v)?.prefixes.get(j.checked_sub(1)?)?;
        Some((ls, t.pst.secondary(v).copied().collect()))
    }

    /// Heap-node count of the underlying tree, `2 * leaves`.
    pub fn node_count(&self) -> usize {
        2 * self.twins[0].pst.leaf_count()
    }
}

/// Reflection taking quadrant `q` of a corner to the south-west quadrant.
fn flip_for(q: Quadrant) -> (i64, i64) {
    let (sx, sy) = q.signs();
    (-sx, -sy)
}

impl TriangleEngine for TwoLayerStructure {
    fn name(&self) -> &'static str {
        "2layer"
    }

    fn len(&self) -> usize {
        self.len
    }

    fn triangle_into(&self, t: &OrthoTriangle, out: &mut Vec<PointId>, stats: &mut TriangleStats) {
        let twin = self.twin(t.quadrant());
        let (fx, fy) = twin.flip;
        let (cx, cy) = t.corner();
        let (a, b, c) = t.hyp().coeffs();
        let hp = t.halfplane();
        let h =
            HalfPlane::new(fx * a, fy * b, c, hp.side).expect("reflection keeps the line valid");
        twin.query(fx * cx, fy * cy, &h, out, stats);
    }

    fn rect_into(&self, r: &AxisRect, out: &mut Vec<PointId>, stats: &mut TriangleStats) {
        if clip_rect(r).is_none() {
            return;
        }
        // The two dissections overlap only on their diagonals; running both
        // covers every point twice, which the id-set union absorbs.
        for d in [Diagonal::Anti, Diagonal::Main] {
            for t in dissect_rect(r, d) {
                self.triangle_into(&t, out, stats);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::QueryLine;
    use crate::oracle::{scan_rect, scan_triangle};

    #[test]
    fn four_points_store_every_prefix() {
        let s = PointSet::from_coords(&[(1, 1), (2, 2), (3, 3), (4, 4)]).unwrap();
        let t = TwoLayerStructure::build(&s).unwrap();
        let twin = t.twin(Quadrant::SW);
        let mut expect = 0;
        for v in 1..t.node_count() {
            let len = twin.pst.secondary_ranks(v).len();
            assert_eq!(twin.sub[v].prefixes.len(), len);
            expect += len * (len + 1) / 2;
        }
        assert_eq!(t.s_prefix_multiplicity(), expect);
        assert_eq!(expect, 10 + 3 + 3 + 4);
    }

    #[test]
    fn cap_is_enforced() {
        let coords: Vec<(i64, i64)> = (0..10).map(|i| (i, i * i)).collect();
        let s = PointSet::from_coords(&coords).unwrap();
        assert_eq!(
            TwoLayerStructure::build_with_cap(&s, 9).unwrap_err(),
            Error::CapExceeded { n: 10, cap: 9 }
        );
        assert!(TwoLayerStructure::build_with_cap(&s, 10).is_ok());
    }

    #[test]
    fn all_quadrants_match_scan() {
        let coords: Vec<(i64, i64)> = (0..53).map(|i| (i * 19 % 53, i * 29 % 53)).collect();
        let s = PointSet::from_coords(&coords).unwrap();
        let t = TwoLayerStructure::build(&s).unwrap();
        for q in Quadrant::ALL {
            for (cx, cy) in [(26, 26), (10, 40), (-5, 60), (52, 0)] {
                for (a, b, c) in [(1, 1, -50), (2, -1, -10), (1, 3, -80), (-3, 1, 20)] {
                    let Ok(tri) = OrthoTriangle::new((cx, cy), q, QueryLine::new(a, b, c).unwrap())
                    else {
                        continue;
                    };
                    assert_eq!(t.query_triangle(&tri).0, scan_triangle(&s, &tri), "{tri:?}");
                }
            }
        }
        for (xl, xh, yl, yh) in [
            (0, 52, 0, 52),
            (19, 19, 29, 29),
            (3, 40, 7, 7),
            (8, 30, 11, 44),
        ] {
            let r = AxisRect::new(xl, xh, yl, yh).unwrap();
            assert_eq!(t.query_rect(&r).0, scan_rect(&s, &r));
        }
    }
}
