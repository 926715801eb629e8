//! Shared fixtures for the benchmarks: one point set and a fixed query batch
//! per size, so every engine sees the same work.

use polyret::workload::{generate_points, Distribution, Workload};
use polyret::{AxisRect, CanonicalPolygon, HalfPlane, OrthoTriangle, PointSet};

pub const SEED: u64 = 7;

pub struct Fixture {
    pub points: PointSet,
    pub halfplanes: Vec<HalfPlane>,
    pub quadrants: Vec<(i64, i64)>,
    pub rects: Vec<AxisRect>,
    pub triangles: Vec<OrthoTriangle>,
    pub polygons: Vec<CanonicalPolygon>,
}

impl Fixture {
    pub fn new(n: usize, queries: usize) -> Self {
        let points = generate_points(n, SEED, Distribution::Uniform);
        let mut w = Workload::new(SEED + 1);
        Fixture {
            points,
            halfplanes: (0..queries).map(|_| w.halfplane()).collect(),
            quadrants: (0..queries).map(|_| w.quadrant()).collect(),
            rects: (0..queries).map(|_| w.rect()).collect(),
            triangles: (0..queries).map(|_| w.triangle()).collect(),
            polygons: (0..queries).map(|_| w.polygon()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_is_deterministic() {
        let a = Fixture::new(100, 5);
        let b = Fixture::new(100, 5);
        assert_eq!(a.points, b.points);
        assert_eq!(a.triangles, b.triangles);
        assert_eq!(a.polygons, b.polygons);
    }
}
