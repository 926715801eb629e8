//! Segment tree on x; each x-node carries a segment tree on y over its own
//! points; each y-node carries convex layers.
//!
//! A triangle query splits its x-range into canonical x-nodes, the y-range
//! inside each of those into canonical y-nodes, and runs one half-plane query
//! per y-node. Both ranges may be prefixes or suffixes, so all four quadrant
//! orientations are answered by the same tree.

use super::{clip_rect, TriangleEngine, TriangleStats};
use crate::error::{Error, Result};
use crate::geom::{AxisRect, OrthoTriangle, Point, PointId};
use crate::layers::{HalfPlaneStats, LayerStructure};
use crate::oracle::PointSet;
use crate::pst::key;

const LEAF: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Span {
    lo: u32,
    hi: u32,
    left: u32,
    right: u32,
}

/// Balanced segment tree over positions `0..n` in preorder; node 0 is the
/// root. Splits at the midpoint, so the height is `ceil(log2 n)`.
#[derive(Debug, Clone)]
struct Shape {
    spans: Vec<Span>,
}

impl Shape {
    fn new(n: usize) -> Self {
        let mut s = Shape {
            spans: Vec::with_capacity(2 * n),
        };
        s.grow(0, n as u32);
        s
    }

    fn grow(&mut self, lo: u32, hi: u32) -> u32 {
        let id = self.spans.len() as u32;
        self.spans.push(Span {
            lo,
            hi,
            left: LEAF,
            right: LEAF,
        });
        if hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            let l = self.grow(lo, mid);
            let r = self.grow(mid, hi);
            self.spans[id as usize].left = l;
            self.spans[id as usize].right = r;
        }
        id
    }

    /// Appends to `out` the maximal nodes whose spans lie inside `[lo, hi)`.
    fn cover(&self, lo: u32, hi: u32, visited: &mut u64, out: &mut Vec<u32>) {
        out.clear();
        if lo < hi {
            self.cover_from(0, lo, hi, visited, out);
        }
    }

    fn cover_from(&self, v: u32, lo: u32, hi: u32, visited: &mut u64, out: &mut Vec<u32>) {
        *visited += 1;
        let s = self.spans[v as usize];
        if s.hi <= lo || hi <= s.lo {
            return;
        }
        if lo <= s.lo && s.hi <= hi {
            out.push(v);
            return;
        }
        self.cover_from(s.left, lo, hi, visited, out);
        self.cover_from(s.right, lo, hi, visited, out);
    }
}

#[derive(Debug, Clone)]
struct XNode {
    by_y: Vec<Point>,
    ys: Shape,
    layers: Vec<LayerStructure>,
}

impl XNode {
    fn build(points: &[Point]) -> Self {
        let mut by_y = points.to_vec();
        by_y.sort_unstable_by_key(key);
        let ys = Shape::new(by_y.len());
        let layers = ys
            .spans
            .iter()
            .map(|s| {
                LayerStructure::from_points(&by_y[s.lo as usize..s.hi as usize])
                    .expect("spans are non-empty")
            })
            .collect();
        XNode { by_y, ys, layers }
    }

    /// Positions in `by_y` with `y` in the closed range `[lo, hi]`.
    fn y_range(&self, lo: i64, hi: i64) -> (u32, u32) {
        let a = self.by_y.partition_point(|p| p.y < lo);
        let b = self.by_y.partition_point(|p| p.y <= hi);
        (a as u32, b as u32)
    }
}

#[derive(Debug, Clone)]
pub struct ThreeLayerTree {
    by_x: Vec<Point>,
    xs: Shape,
    nodes: Vec<XNode>,
}

/// Comparisons made by a binary search over `m` items.
fn probes(m: usize) -> u64 {
    (usize::BITS - m.leading_zeros()) as u64
}

impl ThreeLayerTree {
    pub fn build(s: &PointSet) -> Result<Self> {
        Self::from_points(s.points())
    }

    pub fn from_points(points: &[Point]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut by_x = points.to_vec();
        by_x.sort_unstable_by_key(|p| (p.x, p.id));
        let xs = Shape::new(by_x.len());
        let nodes = xs
            .spans
            .iter()
            .map(|s| XNode::build(&by_x[s.lo as usize..s.hi as usize]))
            .collect();
        Ok(ThreeLayerTree { by_x, xs, nodes })
    }

    /// Height of the x-tree, `ceil(log2 n)`.
    pub fn height(&self) -> u32 {
        self.by_x.len().next_power_of_two().trailing_zeros()
    }

    /// Total number of points stored across all convex-layer structures.
    pub fn stored_multiplicity(&self) -> usize {
        self.nodes
            .iter()
            .flat_map(|x| x.layers.iter())
            .map(LayerStructure::len)
            .sum()
    }

    /// Canonical x-nodes for `x` in `[lo, hi]`, as (first, last) rank
    /// pairs. Their rank ranges partition the matching points.
    pub fn x_cover(&self, lo: i64, hi: i64) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let (a, b) = self.x_range(lo, hi);
        self.xs.cover(a, b, &mut 0, &mut out);
        out.iter()
            .map(|&v| {
                let s = self.xs.spans[v as usize];
                (s.lo as usize, s.hi as usize - 1)
            })
            .collect()
    }

    fn x_range(&self, lo: i64, hi: i64) -> (u32, u32) {
        let a = self.by_x.partition_point(|p| p.x < lo);
        let b = self.by_x.partition_point(|p| p.x <= hi);
        (a as u32, b as u32)
    }

    /// Visits every canonical y-node of the box `[xl, xh] x [yl, yh]`.
    fn for_each_cell(
        &self,
        (xl, xh, yl, yh): (i64, i64, i64, i64),
        stats: &mut TriangleStats,
        mut f: impl FnMut(&XNode, u32, &mut TriangleStats),
    ) {
        let (a, b) = self.x_range(xl, xh);
        stats.nodes_visited += 2 * probes(self.by_x.len());
        let mut xcover = Vec::new();
        let mut ycover = Vec::new();
        self.xs.cover(a, b, &mut stats.nodes_visited, &mut xcover);
        for &xv in &xcover {
            let node = &self.nodes[xv as usize];
            let (c, d) = node.y_range(yl, yh);
            stats.nodes_visited += 2 * probes(node.by_y.len());
            node.ys.cover(c, d, &mut stats.nodes_visited, &mut ycover);
            for &yv in &ycover {
                f(node, yv, stats);
            }
        }
    }
}

impl TriangleEngine for ThreeLayerTree {
    fn name(&self) -> &'static str {
        "3layer"
    }

    fn len(&self) -> usize {
        self.by_x.len()
    }

    fn triangle_into(&self, t: &OrthoTriangle, out: &mut Vec<PointId>, stats: &mut TriangleStats) {
        let (cx, cy) = t.corner();
        let (sx, sy) = t.quadrant().signs();
        let span = |c: i64, s: i64| if s > 0 { (c, i64::MAX) } else { (i64::MIN, c) };
        let ((xl, xh), (yl, yh)) = (span(cx, sx), span(cy, sy));
        let h = t.halfplane();
        self.for_each_cell((xl, xh, yl, yh), stats, |node, yv, stats| {
            let mut hs = HalfPlaneStats::default();
            node.layers[yv as usize].report_into(&h, out, &mut hs);
            stats.substructures_queried += 1;
            stats.nodes_visited += hs.vertices_visited;
        });
    }

    fn rect_into(&self, r: &AxisRect, out: &mut Vec<PointId>, stats: &mut TriangleStats) {
        let Some(r) = clip_rect(r) else {
            return;
        };
        self.for_each_cell(
            (r.x_lo, r.x_hi, r.y_lo, r.y_hi),
            stats,
            |node, yv, stats| {
                let s = node.ys.spans[yv as usize];
                let cell = &node.by_y[s.lo as usize..s.hi as usize];
                stats.nodes_visited += cell.len() as u64;
                out.extend(cell.iter().map(|p| p.id));
            },
        );
    }
}
