//! Canonical convex polygons as unions of orthogonal triangles and axis
//! rectangles.
//!
//! Every sloped edge is shaved off by the right triangle it spans with the
//! axes, right angle on the polygon's side of the edge. What is left between
//! the lower and upper shaving lines is cut into rectangles at vertex
//! abscissae. A polygon is canonical when every right-angle corner lies in
//! the polygon and the shavings from above and below never overlap.

use crate::error::{Error, Result};
use crate::geom::{
    cross, orient_xy, AxisRect, CanonicalPolygon, Orientation, OrthoTriangle, PointId, Quadrant,
    QueryLine,
};
use crate::oracle::IdSet;
use crate::triangle::{TriangleEngine, TriangleStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Piece {
    Rect(AxisRect),
    Triangle(OrthoTriangle),
}

impl Piece {
    pub fn contains(&self, x: i64, y: i64) -> bool {
        match self {
            Piece::Rect(r) => r.contains(x, y),
            Piece::Triangle(t) => t.contains(x, y),
        }
    }

    /// Corners, counterclockwise.
    pub fn vertices(&self) -> Vec<(i64, i64)> {
        match *self {
            Piece::Rect(r) => vec![
                (r.x_lo, r.y_lo),
                (r.x_hi, r.y_lo),
                (r.x_hi, r.y_hi),
                (r.x_lo, r.y_hi),
            ],
            Piece::Triangle(t) => {
                let (cx, cy) = t.corner();
                let (sx, sy) = t.quadrant().signs();
                let (a, b, c) = t.hyp().coeffs();
                // Legs meet the hypotenuse where x = cx or y = cy.
                let on_y = (-(c as i128) - a as i128 * cx as i128) / b as i128;
                let on_x = (-(c as i128) - b as i128 * cy as i128) / a as i128;
                let v = [(cx, cy), (on_x as i64, cy), (cx, on_y as i64)];
                if sx * sy > 0 {
                    v.to_vec()
                } else {
                    vec![v[0], v[2], v[1]]
                }
            }
        }
    }
}

/// Boundary shared by two pieces: a segment, or a single point when
/// `from == to`. The lower piece index owns it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Seam {
    pub pieces: (usize, usize),
    pub from: (i64, i64),
    pub to: (i64, i64),
    pub owner: usize,
}

impl Seam {
    pub fn contains(&self, x: i64, y: i64) -> bool {
        let (p, q) = (self.from, self.to);
        cross(p, q, (x, y)) == 0
            && p.0.min(q.0) <= x
            && x <= p.0.max(q.0)
            && p.1.min(q.1) <= y
            && y <= p.1.max(q.1)
    }
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub polygon: CanonicalPolygon,
    pub pieces: Vec<Piece>,
    pub seams: Vec<Seam>,
}

impl Decomposition {
    pub fn triangles(&self) -> impl Iterator<Item = &OrthoTriangle> {
        self.pieces.iter().filter_map(|p| match p {
            Piece::Triangle(t) => Some(t),
            Piece::Rect(_) => None,
        })
    }

    pub fn rects(&self) -> impl Iterator<Item = &AxisRect> {
        self.pieces.iter().filter_map(|p| match p {
            Piece::Rect(r) => Some(r),
            Piece::Triangle(_) => None,
        })
    }

    /// Indices of the pieces containing `(x, y)`.
    pub fn owners_of(&self, x: i64, y: i64) -> Vec<usize> {
        (0..self.pieces.len())
            .filter(|&i| self.pieces[i].contains(x, y))
            .collect()
    }

    pub fn on_seam(&self, x: i64, y: i64) -> bool {
        self.seams.iter().any(|s| s.contains(x, y))
    }
}

pub fn decompose(poly: &CanonicalPolygon) -> Result<Decomposition> {
    let vs = poly.vertices();
    let mut pieces = Vec::new();
    // Shaving bounds: (x_from, x_to, y) for lower and upper chains.
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for (p, q) in poly.edges() {
        if p.0 == q.0 {
            continue;
        }
        let bounds = if q.0 > p.0 { &mut lower } else { &mut upper };
        let span = (p.0.min(q.0), p.0.max(q.0));
        if p.1 == q.1 {
            bounds.push((span.0, span.1, p.1));
            continue;
        }
        let corner = [(p.0, q.1), (q.0, p.1)]
            .into_iter()
            .find(|&c| orient_xy(p, q, c) == Orientation::Ccw)
            .expect("the two candidates straddle the edge");
        if !poly.contains(corner.0, corner.1) {
            return Err(Error::NotCanonical("shaving corner outside the polygon"));
        }
        // The corner shares its x with one endpoint and its y with the other.
        let (x_end, y_end) = if corner.0 == p.0 { (q, p) } else { (p, q) };
        let quadrant = Quadrant::from_signs(x_end.0 - corner.0, y_end.1 - corner.1);
        let hyp = QueryLine::through(p, q)?;
        pieces.push(Piece::Triangle(OrthoTriangle::new(corner, quadrant, hyp)?));
        bounds.push((span.0, span.1, corner.1));
    }

    let mut xs: Vec<i64> = vs.iter().map(|v| v.0).collect();
    xs.sort_unstable();
    xs.dedup();
    let bound_at = |chain: &[(i64, i64, i64)], a: i64, b: i64| {
        chain
            .iter()
            .find(|&&(lo, hi, _)| lo <= a && b <= hi)
            .map(|&(_, _, y)| y)
            .expect("convex chains cover every slab")
    };
    let mut open: Option<AxisRect> = None;
    for w in xs.windows(2) {
        let (lo, hi) = (bound_at(&lower, w[0], w[1]), bound_at(&upper, w[0], w[1]));
        if lo > hi {
            return Err(Error::NotCanonical("shavings from above and below overlap"));
        }
        match &mut open {
            Some(r) if lo < hi && r.x_hi == w[0] && r.y_lo == lo && r.y_hi == hi => r.x_hi = w[1],
            _ => {
                if let Some(r) = open.take() {
                    pieces.push(Piece::Rect(r));
                }
                if lo < hi {
                    open = Some(AxisRect::new(w[0], w[1], lo, hi)?);
                }
            }
        }
    }
    if let Some(r) = open {
        pieces.push(Piece::Rect(r));
    }

    let seams = find_seams(&pieces);
    Ok(Decomposition {
        polygon: poly.clone(),
        pieces,
        seams,
    })
}

/// Pairwise intersections of the closed pieces. Pieces are convex with
/// disjoint interiors, so each intersection is the hull of the corners of
/// either piece lying in the other: a segment, a point, or nothing.
fn find_seams(pieces: &[Piece]) -> Vec<Seam> {
    let corners: Vec<Vec<(i64, i64)>> = pieces.iter().map(Piece::vertices).collect();
    let mut seams = Vec::new();
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            let mut shared: Vec<(i64, i64)> = corners[i]
                .iter()
                .filter(|c| pieces[j].contains(c.0, c.1))
                .chain(corners[j].iter().filter(|c| pieces[i].contains(c.0, c.1)))
                .copied()
                .collect();
            if shared.is_empty() {
                continue;
            }
            shared.sort_unstable();
            seams.push(Seam {
                pieces: (i, j),
                from: shared[0],
                to: shared[shared.len() - 1],
                owner: i,
            });
        }
    }
    seams
}

pub fn is_canonical(poly: &CanonicalPolygon) -> bool {
    decompose(poly).is_ok()
}

/// One engine query per piece, unioned.
pub fn query_polygon(engine: &dyn TriangleEngine, d: &Decomposition) -> (IdSet, TriangleStats) {
    let mut out: Vec<PointId> = Vec::new();
    let mut stats = TriangleStats::default();
    for piece in &d.pieces {
        match piece {
            Piece::Rect(r) => engine.rect_into(r, &mut out, &mut stats),
            Piece::Triangle(t) => engine.triangle_into(t, &mut out, &mut stats),
        }
    }
    (out.into_iter().collect(), stats)
}
