//! Convex layers (onion peeling) with output-sensitive half-plane reporting.
//!
//! Layer 0 is the strict convex hull of the input, layer `i + 1` the strict
//! hull of what remains after removing layers `0..=i`. Points lying on a hull
//! edge without being a corner are left for a deeper layer, so every ring is
//! strictly convex.
//!
//! A query walks the layers from the outside in. On each layer the vertex
//! extreme in the direction of the half-plane's inward normal is found by a
//! binary search over edge angles; if even that vertex is outside, the layer
//! and everything nested in it are outside too. Otherwise the ring is walked
//! both ways from the extreme vertex while vertices stay inside. Once a whole
//! ring is inside, every deeper layer is inside as well and is reported
//! without further searching.

use crate::error::{Error, Result};
use crate::geom::{cross, HalfPlane, Point, PointId};
use crate::oracle::{IdSet, PointSet};

const NO_EDGE: u32 = u32::MAX;

/// Vertical links from a vertex to the edges of the next outer layer
/// directly above and below it. Edge `j` of a ring joins vertex `j` to
/// vertex `j + 1` (cyclically).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bridge {
    above: u32,
    below: u32,
}

impl Bridge {
    const NONE: Bridge = Bridge {
        above: NO_EDGE,
        below: NO_EDGE,
    };

    pub fn above(&self) -> Option<usize> {
        (self.above != NO_EDGE).then_some(self.above as usize)
    }

    pub fn below(&self) -> Option<usize> {
        (self.below != NO_EDGE).then_some(self.below as usize)
    }
}

/// Per-query work counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HalfPlaneStats {
    /// Ring positions examined: binary-search probes plus walked vertices.
    pub vertices_visited: u64,
    pub layers_tested: u64,
}

#[derive(Debug, Clone)]
pub struct LayerStructure {
    /// Rings stored back to back, outermost first, each counterclockwise.
    vertices: Vec<Point>,
    offsets: Vec<u32>,
    bridges: Vec<Bridge>,
}

impl LayerStructure {
    pub fn build(s: &PointSet) -> Result<Self> {
        Self::from_points(s.points())
    }

    /// Builds from distinct points in any order.
    pub fn from_points(points: &[Point]) -> Result<Self> {
        let mut sorted = points.to_vec();
        sorted.sort_unstable_by_key(|p| (p.x, p.y));
        Self::from_sorted(sorted)
    }

    /// Builds from distinct points already sorted by `(x, y)`.
    pub(crate) fn from_sorted(mut remaining: Vec<Point>) -> Result<Self> {
        if remaining.is_empty() {
            return Err(Error::EmptyInput);
        }
        let n = remaining.len();
        let mut vertices = Vec::with_capacity(n);
        let mut offsets = vec![0u32];
        let mut on_hull = vec![false; n];
        let mut ring = Vec::new();
        while !remaining.is_empty() {
            strict_hull(&remaining, &mut ring);
            on_hull[..remaining.len()]
                .iter_mut()
                .for_each(|f| *f = false);
            for &i in &ring {
                on_hull[i] = true;
                vertices.push(remaining[i]);
            }
            offsets.push(vertices.len() as u32);
            let mut idx = 0;
            remaining.retain(|_| {
                idx += 1;
                !on_hull[idx - 1]
            });
        }
        let mut ls = LayerStructure {
            vertices,
            offsets,
            bridges: Vec::new(),
        };
        ls.bridges = ls.compute_bridges();
        Ok(ls)
    }

    fn compute_bridges(&self) -> Vec<Bridge> {
        let mut bridges = vec![Bridge::NONE; self.vertices.len()];
        for i in 1..self.layer_count() {
            let outer_ring = self.layer(i - 1);
            let base = self.offsets[i] as usize;
            for (k, w) in self.layer(i).iter().enumerate() {
                let mut b = Bridge::NONE;
                let h = outer_ring.len();
                for j in 0..h {
                    let (p, q) = (outer_ring[j], outer_ring[(j + 1) % h]);
                    let (lo, hi) = (p.x.min(q.x), p.x.max(q.x));
                    if w.x < lo || w.x > hi || p.x == q.x {
                        continue;
                    }
                    // Counterclockwise: leftward edges form the upper chain.
                    if q.x < p.x && b.above == NO_EDGE {
                        b.above = j as u32;
                    } else if q.x > p.x && b.below == NO_EDGE {
                        b.below = j as u32;
                    }
                }
                bridges[base + k] = b;
            }
        }
        bridges
    }

    pub fn layer_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn layer(&self, i: usize) -> &[Point] {
        &self.vertices[self.offsets[i] as usize..self.offsets[i + 1] as usize]
    }

    pub fn layers(&self) -> impl Iterator<Item = &[Point]> {
        (0..self.layer_count()).map(|i| self.layer(i))
    }

    /// Bridge of vertex `k` of layer `i`; `None` links for layer 0.
    pub fn bridge(&self, i: usize, k: usize) -> Bridge {
        self.bridges[self.offsets[i] as usize + k]
    }

    /// Number of stored vertices (equals the number of input points).
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.vertices
    }

    /// Index (within the ring) of a vertex of layer `i` maximizing the dot
    /// product with `dir`.
    pub fn extreme_vertex(&self, i: usize, dir: (i64, i64)) -> usize {
        let mut probes = 0;
        extreme_in_ring(self.layer(i), (dir.0 as i128, dir.1 as i128), &mut probes)
    }

    /// Deepest layer having at least one vertex in `h`. Because layers nest,
    /// the scan stops at the first layer entirely outside `h`.
    pub fn innermost_intersected_layer(&self, h: &HalfPlane) -> (Option<usize>, HalfPlaneStats) {
        let mut stats = HalfPlaneStats::default();
        let dir = normal(h);
        let mut deepest = None;
        for i in 0..self.layer_count() {
            stats.layers_tested += 1;
            let ring = self.layer(i);
            let e = extreme_in_ring(ring, dir, &mut stats.vertices_visited);
            if !h.contains_point(&ring[e]) {
                break;
            }
            deepest = Some(i);
        }
        (deepest, stats)
    }

    pub fn report_halfplane(&self, h: &HalfPlane) -> (IdSet, HalfPlaneStats) {
        let mut out = Vec::new();
        let mut stats = HalfPlaneStats::default();
        self.report_into(h, &mut out, &mut stats);
        (out.into_iter().collect(), stats)
    }

    /// Appends the ids of all points in `h` to `out` (each exactly once).
    pub fn report_into(&self, h: &HalfPlane, out: &mut Vec<PointId>, stats: &mut HalfPlaneStats) {
        let dir = normal(h);
        for i in 0..self.layer_count() {
            stats.layers_tested += 1;
            let ring = self.layer(i);
            let len = ring.len();
            let e = extreme_in_ring(ring, dir, &mut stats.vertices_visited);
            stats.vertices_visited += 1;
            if !h.contains_point(&ring[e]) {
                return;
            }
            out.push(ring[e].id);
            let mut fwd = 1;
            while fwd < len {
                stats.vertices_visited += 1;
                let v = &ring[(e + fwd) % len];
                if !h.contains_point(v) {
                    break;
                }
                out.push(v.id);
                fwd += 1;
            }
            if fwd == len {
                // Whole ring inside: all deeper layers are too.
                let rest = &self.vertices[self.offsets[i + 1] as usize..];
                stats.vertices_visited += rest.len() as u64;
                out.extend(rest.iter().map(|p| p.id));
                return;
            }
            // fwd indexes a vertex known to be outside; walk back toward it.
            let mut back = 1;
            while back < len - fwd {
                stats.vertices_visited += 1;
                let v = &ring[(e + len - back) % len];
                if !h.contains_point(v) {
                    break;
                }
                out.push(v.id);
                back += 1;
            }
        }
    }
}

pub fn build_layers(s: &PointSet) -> Result<LayerStructure> {
    LayerStructure::build(s)
}

fn normal(h: &HalfPlane) -> (i128, i128) {
    let (a, b) = h.inward_normal();
    (a as i128, b as i128)
}

/// Strict convex hull of points sorted by `(x, y)`, as indices in
/// counterclockwise order starting from the first point.
fn strict_hull(sorted: &[Point], hull: &mut Vec<usize>) {
    hull.clear();
    let n = sorted.len();
    if n == 1 {
        hull.push(0);
        return;
    }
    let turn = |h: &[usize], k: usize| {
        cross(
            sorted[h[h.len() - 2]].xy(),
            sorted[h[h.len() - 1]].xy(),
            sorted[k].xy(),
        )
    };
    for k in 0..n {
        while hull.len() >= 2 && turn(hull, k) <= 0 {
            hull.pop();
        }
        hull.push(k);
    }
    let lower = hull.len() + 1;
    for k in (0..n - 1).rev() {
        while hull.len() >= lower && turn(hull, k) <= 0 {
            hull.pop();
        }
        hull.push(k);
    }
    hull.pop();
}

/// Binary search for the extreme vertex of a strictly convex CCW ring.
///
/// Edge directions of such a ring increase monotonically in angle (measured
/// from edge 0, in `[0, 2*pi)`). The vertex maximizing `<v, dir>` is the
/// start of the first edge whose angle reaches that of `dir` rotated by 90
/// degrees counterclockwise.
fn extreme_in_ring(ring: &[Point], dir: (i128, i128), probes: &mut u64) -> usize {
    let h = ring.len();
    if h == 1 {
        return 0;
    }
    let edge = |j: usize| {
        let (p, q) = (ring[j], ring[(j + 1) % h]);
        ((q.x - p.x) as i128, (q.y - p.y) as i128)
    };
    let r = edge(0);
    let half = |v: (i128, i128)| {
        let c = r.0 * v.1 - r.1 * v.0;
        let d = r.0 * v.0 + r.1 * v.1;
        !(c > 0 || (c == 0 && d > 0))
    };
    // Strictly-before in angle relative to r.
    let before = |u: (i128, i128), v: (i128, i128)| {
        let (hu, hv) = (half(u), half(v));
        if hu != hv {
            return !hu;
        }
        u.0 * v.1 - u.1 * v.0 > 0
    };
    let target = (-dir.1, dir.0);
    let (mut lo, mut hi) = (0usize, h);
    while lo < hi {
        let mid = (lo + hi) / 2;
        *probes += 1;
        if before(edge(mid), target) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo % h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::HalfPlaneSide;
    use crate::oracle::scan_halfplane;

    fn set(coords: &[(i64, i64)]) -> PointSet {
        PointSet::from_coords(coords).unwrap()
    }

    #[test]
    fn square_is_one_layer() {
        let ls = build_layers(&set(&[(0, 0), (2, 0), (2, 2), (0, 2)])).unwrap();
        assert_eq!(ls.layer_count(), 1);
        assert_eq!(ls.layer(0).len(), 4);
    }

    #[test]
    fn square_with_center_is_two_layers() {
        let ls = build_layers(&set(&[(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)])).unwrap();
        assert_eq!(ls.layer_count(), 2);
        assert_eq!(ls.layer(1), &[Point::new(4, 1, 1)]);
        let b = ls.bridge(1, 0);
        let outer = ls.layer(0);
        let above = b.above().unwrap();
        let below = b.below().unwrap();
        assert_eq!(outer[above].y.max(outer[(above + 1) % 4].y), 2);
        assert_eq!(outer[below].y.min(outer[(below + 1) % 4].y), 0);
    }

    #[test]
    fn collinear_points_peel_into_deeper_layers() {
        let ls = build_layers(&set(&[(0, 0), (1, 0), (2, 0), (3, 0)])).unwrap();
        let sizes: Vec<usize> = ls.layers().map(|l| l.len()).collect();
        assert_eq!(sizes, vec![2, 2]);
        let ls = build_layers(&set(&[(0, 0), (1, 0), (2, 0), (2, 2)])).unwrap();
        let sizes: Vec<usize> = ls.layers().map(|l| l.len()).collect();
        assert_eq!(sizes, vec![3, 1]);
    }

    #[test]
    fn empty_input_rejected() {
        assert_eq!(
            LayerStructure::from_points(&[]).unwrap_err(),
            Error::EmptyInput
        );
    }

    #[test]
    fn extreme_vertex_examples() {
        let ls = build_layers(&set(&[(0, 0), (2, 0), (2, 2), (0, 2)])).unwrap();
        let ring = ls.layer(0);
        assert_eq!(ring[ls.extreme_vertex(0, (1, 0))].x, 2);
        assert_eq!(ring[ls.extreme_vertex(0, (0, 1))].y, 2);
        assert_eq!(ring[ls.extreme_vertex(0, (-1, -1))].xy(), (0, 0));
        assert_eq!(ring[ls.extreme_vertex(0, (1, -1))].xy(), (2, 0));
        let single = build_layers(&set(&[(5, 5)])).unwrap();
        assert_eq!(single.extreme_vertex(0, (3, -7)), 0);
    }

    #[test]
    fn innermost_examples() {
        let ls = build_layers(&set(&[(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)])).unwrap();
        let all = HalfPlane::new(1, 0, 10, HalfPlaneSide::NonNegative).unwrap();
        assert_eq!(ls.innermost_intersected_layer(&all).0, Some(1));
        let none = HalfPlane::new(1, 0, -10, HalfPlaneSide::NonNegative).unwrap();
        let (found, stats) = ls.innermost_intersected_layer(&none);
        assert_eq!(found, None);
        assert_eq!(stats.layers_tested, 1);
    }

    #[test]
    fn report_boundary_vertex_only() {
        let s = set(&[(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)]);
        let ls = build_layers(&s).unwrap();
        // x + y >= 4 touches only (2, 2).
        let h = HalfPlane::new(1, 1, -4, HalfPlaneSide::NonNegative).unwrap();
        assert_eq!(ls.report_halfplane(&h).0, IdSet::from([2]));
        let every = HalfPlane::new(0, 1, 100, HalfPlaneSide::NonNegative).unwrap();
        assert_eq!(ls.report_halfplane(&every).0, s.ids());
    }

    #[test]
    fn report_matches_scan_on_grid() {
        let coords: Vec<(i64, i64)> = (0..9).flat_map(|x| (0..7).map(move |y| (x, y))).collect();
        let s = set(&coords);
        let ls = build_layers(&s).unwrap();
        for (a, b, c) in [
            (1, 1, -7),
            (2, -3, 1),
            (0, 1, -3),
            (1, 0, -4),
            (-1, 2, 0),
            (3, 1, -12),
        ] {
            for side in [HalfPlaneSide::NonNegative, HalfPlaneSide::NonPositive] {
                let h = HalfPlane::new(a, b, c, side).unwrap();
                assert_eq!(
                    ls.report_halfplane(&h).0,
                    scan_halfplane(&s, &h),
                    "{a} {b} {c}"
                );
            }
        }
    }
}
