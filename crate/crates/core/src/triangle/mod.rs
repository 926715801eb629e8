//! Orthogonal triangle range reporting.
//!
//! Two engines answer the same queries: [`ThreeLayerTree`] (x-tree, y-trees,
//! convex layers; near-linear space) and [`TwoLayerStructure`] (persistent
//! priority search tree with prefix half-plane structures; quadratic space,
//! fewer search steps).

mod three_layer;
mod two_layer;

pub use three_layer::ThreeLayerTree;
pub use two_layer::{TwoLayerStructure, DEFAULT_CAP};

use crate::error::Result;
use crate::geom::{AxisRect, OrthoTriangle, PointId, Quadrant, QueryLine, COORD_LIMIT};
use crate::oracle::{IdSet, PointSet};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TriangleStats {
    /// Tree nodes, binary-search probes, list entries and layer vertices
    /// touched while answering.
    pub nodes_visited: u64,
    /// Half-plane structures queried.
    pub substructures_queried: u64,
}

impl std::ops::AddAssign for TriangleStats {
    fn add_assign(&mut self, o: Self) {
        self.nodes_visited += o.nodes_visited;
        self.substructures_queried += o.substructures_queried;
    }
}

pub trait TriangleEngine {
    fn name(&self) -> &'static str;

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Appends the ids in `t` to `out`; an id may be appended repeatedly.
    fn triangle_into(&self, t: &OrthoTriangle, out: &mut Vec<PointId>, stats: &mut TriangleStats);

    fn rect_into(&self, r: &AxisRect, out: &mut Vec<PointId>, stats: &mut TriangleStats);

    fn query_triangle(&self, t: &OrthoTriangle) -> (IdSet, TriangleStats) {
        let mut out = Vec::new();
        let mut stats = TriangleStats::default();
        self.triangle_into(t, &mut out, &mut stats);
        (out.into_iter().collect(), stats)
    }

    fn query_rect(&self, r: &AxisRect) -> (IdSet, TriangleStats) {
        let mut out = Vec::new();
        let mut stats = TriangleStats::default();
        self.rect_into(r, &mut out, &mut stats);
        (out.into_iter().collect(), stats)
    }
}

pub fn build_three_layer(s: &PointSet) -> Result<ThreeLayerTree> {
    ThreeLayerTree::build(s)
}

pub fn build_two_layer(s: &PointSet) -> Result<TwoLayerStructure> {
    TwoLayerStructure::build(s)
}

pub fn query_triangle_3l(t: &ThreeLayerTree, q: &OrthoTriangle) -> (IdSet, TriangleStats) {
    t.query_triangle(q)
}

pub fn query_triangle_2l(s: &TwoLayerStructure, q: &OrthoTriangle) -> (IdSet, TriangleStats) {
    s.query_triangle(q)
}

pub fn query_rect(engine: &dyn TriangleEngine, r: &AxisRect) -> (IdSet, TriangleStats) {
    engine.query_rect(r)
}

/// Which diagonal splits a rectangle into two orthogonal triangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diagonal {
    /// From `(x_lo, y_lo)` to `(x_hi, y_hi)`.
    Main,
    /// From `(x_hi, y_lo)` to `(x_lo, y_hi)`.
    Anti,
}

/// Clips `r` to the coordinate range; `None` if nothing is left.
pub(crate) fn clip_rect(r: &AxisRect) -> Option<AxisRect> {
    let clip = |v: i64| v.clamp(-COORD_LIMIT, COORD_LIMIT);
    if r.x_hi < -COORD_LIMIT
        || r.x_lo > COORD_LIMIT
        || r.y_hi < -COORD_LIMIT
        || r.y_lo > COORD_LIMIT
    {
        return None;
    }
    Some(AxisRect {
        x_lo: clip(r.x_lo),
        x_hi: clip(r.x_hi),
        y_lo: clip(r.y_lo),
        y_hi: clip(r.y_hi),
    })
}

/// Orthogonal triangles whose union holds exactly the integer points of `r`.
///
/// A rectangle of positive width and height splits along `diagonal` into two
/// closed triangles. A zero-width (or zero-height) rectangle has no
/// orthogonal triangle with the same region, but one thin triangle from the
/// bottom-left corner holds the same lattice points: its hypotenuse crosses
/// the segment's line half a unit past the far end and leaves the
/// neighbouring grid column (row) before reaching it.
pub fn dissect_rect(r: &AxisRect, diagonal: Diagonal) -> Vec<OrthoTriangle> {
    let Some(r) = clip_rect(r) else {
        return Vec::new();
    };
    let (w, h) = ((r.x_hi - r.x_lo) as i128, (r.y_hi - r.y_lo) as i128);
    let line = |a: i128, b: i128, c: i128| {
        QueryLine::new(a as i64, b as i64, c as i64).expect("coefficients fit after clipping")
    };
    let tri = |corner, q, l| OrthoTriangle::new(corner, q, l).expect("corner off hypotenuse");
    let (xl, xh, yl, yh) = (
        r.x_lo as i128,
        r.x_hi as i128,
        r.y_lo as i128,
        r.y_hi as i128,
    );
    if w == 0 {
        let d = h + 1;
        let l = line(2 * d, 2, -(2 * d * xl + 2 * yh + 1));
        return vec![tri((r.x_lo, r.y_lo), Quadrant::NE, l)];
    }
    if h == 0 {
        let d = w + 1;
        let l = line(2, 2 * d, -(2 * d * yl + 2 * xh + 1));
        return vec![tri((r.x_lo, r.y_lo), Quadrant::NE, l)];
    }
    match diagonal {
        Diagonal::Anti => {
            let l = QueryLine::through((r.x_hi, r.y_lo), (r.x_lo, r.y_hi)).unwrap();
            vec![
                tri((r.x_lo, r.y_lo), Quadrant::NE, l),
                tri((r.x_hi, r.y_hi), Quadrant::SW, l),
            ]
        }
        Diagonal::Main => {
            let l = QueryLine::through((r.x_lo, r.y_lo), (r.x_hi, r.y_hi)).unwrap();
            vec![
                tri((r.x_hi, r.y_lo), Quadrant::NW, l),
                tri((r.x_lo, r.y_hi), Quadrant::SE, l),
            ]
        }
    }
}
