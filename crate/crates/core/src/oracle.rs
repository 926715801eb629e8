//! Linear-scan reference answers for every query region.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::geom::{AxisRect, CanonicalPolygon, HalfPlane, OrthoTriangle, Point, PointId};

pub type IdSet = BTreeSet<PointId>;

/// A validated point set: coordinates in range, no repeated `(x, y)` and no
/// repeated id. Points are kept sorted by id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(mut points: Vec<Point>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(points.len());
        for p in &points {
            Point::checked(p.id, p.x, p.y)?;
            if !seen.insert((p.x, p.y)) {
                return Err(Error::DuplicatePoint { x: p.x, y: p.y });
            }
        }
        points.sort_unstable_by_key(|p| p.id);
        if let Some(w) = points.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::DuplicateId(w[0].id));
        }
        Ok(PointSet { points })
    }

    /// Points `(x, y)` numbered `0..n` in the given order.
    pub fn from_coords(coords: &[(i64, i64)]) -> Result<Self> {
        Self::new(
            coords
                .iter()
                .enumerate()
                .map(|(i, &(x, y))| Point::new(i as PointId, x, y))
                .collect(),
        )
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ids(&self) -> IdSet {
        self.points.iter().map(|p| p.id).collect()
    }

    pub fn bbox(&self) -> Option<AxisRect> {
        let first = self.points.first()?;
        let mut r = AxisRect {
            x_lo: first.x,
            x_hi: first.x,
            y_lo: first.y,
            y_hi: first.y,
        };
        for p in &self.points {
            r.x_lo = r.x_lo.min(p.x);
            r.x_hi = r.x_hi.max(p.x);
            r.y_lo = r.y_lo.min(p.y);
            r.y_hi = r.y_hi.max(p.y);
        }
        Some(r)
    }

    fn scan(&self, keep: impl Fn(&Point) -> bool) -> IdSet {
        self.points
            .iter()
            .filter(|p| keep(p))
            .map(|p| p.id)
            .collect()
    }
}

pub fn scan_halfplane(s: &PointSet, h: &HalfPlane) -> IdSet {
    s.scan(|p| h.contains_point(p))
}

/// Region `(-inf, b] x (-inf, c]`.
pub fn scan_quadrant(s: &PointSet, b: i64, c: i64) -> IdSet {
    s.scan(|p| p.x <= b && p.y <= c)
}

pub fn scan_rect(s: &PointSet, r: &AxisRect) -> IdSet {
    s.scan(|p| r.contains(p.x, p.y))
}

pub fn scan_triangle(s: &PointSet, t: &OrthoTriangle) -> IdSet {
    s.scan(|p| t.contains(p.x, p.y))
}

pub fn scan_polygon(s: &PointSet, poly: &CanonicalPolygon) -> IdSet {
    s.scan(|p| poly.contains(p.x, p.y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{HalfPlaneSide, Quadrant, QueryLine};

    #[test]
    fn rejects_duplicates() {
        assert_eq!(
            PointSet::from_coords(&[(1, 2), (1, 2)]),
            Err(Error::DuplicatePoint { x: 1, y: 2 })
        );
        let pts = vec![Point::new(7, 0, 0), Point::new(7, 1, 1)];
        assert_eq!(PointSet::new(pts), Err(Error::DuplicateId(7)));
        assert!(matches!(
            PointSet::from_coords(&[(1 << 31, 0)]),
            Err(Error::CoordinateOutOfRange { .. })
        ));
    }

    #[test]
    fn scan_examples() {
        let s = PointSet::from_coords(&[(0, 0), (5, 5)]).unwrap();
        let h = HalfPlane::new(1, 1, -3, HalfPlaneSide::NonPositive).unwrap();
        assert_eq!(scan_halfplane(&s, &h), IdSet::from([0]));
        assert!(scan_quadrant(&s, -1, 10).is_empty());
        assert_eq!(scan_quadrant(&s, 5, 5), s.ids());
        let bb = s.bbox().unwrap();
        assert_eq!(scan_rect(&s, &bb), s.ids());
    }

    #[test]
    fn rect_equals_union_of_diagonal_triangles() {
        let coords: Vec<(i64, i64)> = (0..12).flat_map(|x| (0..9).map(move |y| (x, y))).collect();
        let s = PointSet::from_coords(&coords).unwrap();
        let r = AxisRect::new(2, 9, 1, 6).unwrap();
        let hyp = QueryLine::through((r.x_hi, r.y_lo), (r.x_lo, r.y_hi)).unwrap();
        let lower = OrthoTriangle::new((r.x_lo, r.y_lo), Quadrant::NE, hyp).unwrap();
        let upper = OrthoTriangle::new((r.x_hi, r.y_hi), Quadrant::SW, hyp).unwrap();
        let mut union = scan_triangle(&s, &lower);
        union.extend(scan_triangle(&s, &upper));
        assert_eq!(union, scan_rect(&s, &r));
    }
}
