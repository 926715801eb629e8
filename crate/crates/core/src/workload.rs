//! Seeded generators for point sets and queries.
//!
//! Everything is driven by ChaCha8, so a seed reproduces the same output on
//! every platform.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Normal};

use crate::geom::{
    cross, AxisRect, CanonicalPolygon, HalfPlane, HalfPlaneSide, OrthoTriangle, Quadrant, QueryLine,
};
use crate::oracle::PointSet;
use crate::polygon::is_canonical;

/// Generated coordinates lie in `[0, DEFAULT_SPAN]`.
pub const DEFAULT_SPAN: i64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distribution {
    Uniform,
    Clustered,
    GridMinusDiagonal,
}

impl Distribution {
    pub const ALL: [Distribution; 3] = [
        Distribution::Uniform,
        Distribution::Clustered,
        Distribution::GridMinusDiagonal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Distribution::Uniform => "uniform",
            Distribution::Clustered => "clustered",
            Distribution::GridMinusDiagonal => "grid-minus-diagonal",
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Distribution {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Distribution::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| format!("unknown distribution {s:?}"))
    }
}

/// `n` distinct points with ids `0..n`.
pub fn generate_points(n: usize, seed: u64, dist: Distribution) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = match dist {
        Distribution::Uniform => distinct(n, || {
            (
                rng.random_range(0..=DEFAULT_SPAN),
                rng.random_range(0..=DEFAULT_SPAN),
            )
        }),
        Distribution::Clustered => {
            let centers: Vec<(f64, f64)> = (0..n.div_ceil(500).max(1))
                .map(|_| {
                    let s = DEFAULT_SPAN as f64;
                    (
                        rng.random_range(0.1 * s..0.9 * s),
                        rng.random_range(0.1 * s..0.9 * s),
                    )
                })
                .collect();
            let spread = Normal::new(0.0, DEFAULT_SPAN as f64 / 60.0).unwrap();
            distinct(n, || {
                let (cx, cy) = centers[rng.random_range(0..centers.len())];
                let clamp = |v: f64| (v.round() as i64).clamp(0, DEFAULT_SPAN);
                (
                    clamp(cx + spread.sample(&mut rng)),
                    clamp(cy + spread.sample(&mut rng)),
                )
            })
        }
        Distribution::GridMinusDiagonal => {
            // Smallest k with k(k - 1) off-diagonal cells >= n.
            let mut k = 2;
            while k * (k - 1) < n {
                k += 1;
            }
            let step = (DEFAULT_SPAN / k as i64).max(1);
            let mut cells: Vec<(i64, i64)> = (0..k as i64)
                .flat_map(|i| (0..k as i64).filter(move |&j| j != i).map(move |j| (i, j)))
                .take(n)
                .map(|(i, j)| (i * step, j * step))
                .collect();
            cells.shuffle(&mut rng);
            cells
        }
    };
    PointSet::from_coords(&coords).expect("generated points are distinct and in range")
}

fn distinct(n: usize, mut next: impl FnMut() -> (i64, i64)) -> Vec<(i64, i64)> {
    let mut seen = HashSet::with_capacity(n);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = next();
        if seen.insert(p) {
            out.push(p);
        }
    }
    out
}

/// Query generator over the box `[0, span]^2`.
#[derive(Debug, Clone)]
pub struct Workload {
    rng: ChaCha8Rng,
    span: i64,
}

impl Workload {
    pub fn new(seed: u64) -> Self {
        Self::with_span(seed, DEFAULT_SPAN)
    }

    pub fn with_span(seed: u64, span: i64) -> Self {
        Workload {
            rng: ChaCha8Rng::seed_from_u64(seed),
            span,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A coordinate in the box, occasionally a little outside it.
    fn coord(&mut self) -> i64 {
        let pad = self.span / 20;
        self.rng.random_range(-pad..=self.span + pad)
    }

    pub fn point(&mut self) -> (i64, i64) {
        (self.coord(), self.coord())
    }

    pub fn halfplane(&mut self) -> HalfPlane {
        loop {
            let a = self.rng.random_range(-1000..=1000);
            let b = self.rng.random_range(-1000..=1000);
            if a == 0 && b == 0 {
                continue;
            }
            let (x, y) = self.point();
            let c = -(a * x + b * y);
            let side = if self.rng.random_bool(0.5) {
                HalfPlaneSide::NonNegative
            } else {
                HalfPlaneSide::NonPositive
            };
            return HalfPlane::new(a, b, c, side).expect("(a, b) is nonzero");
        }
    }

    /// `(b, c)` for the quadrant `x <= b, y <= c`.
    pub fn quadrant(&mut self) -> (i64, i64) {
        self.point()
    }

    pub fn rect(&mut self) -> AxisRect {
        let (x0, y0) = self.point();
        let (mut x1, mut y1) = self.point();
        match self.rng.random_range(0..20) {
            0 => x1 = x0,
            1 => y1 = y0,
            _ => {}
        }
        AxisRect::new(x0.min(x1), x0.max(x1), y0.min(y1), y0.max(y1)).unwrap()
    }

    /// Mostly right triangles with both legs ending on the hypotenuse; one in
    /// five has an arbitrary sloped hypotenuse instead.
    pub fn triangle(&mut self) -> OrthoTriangle {
        loop {
            let corner = self.point();
            let q = Quadrant::ALL[self.rng.random_range(0..4)];
            let (sx, sy) = q.signs();
            let hyp = if self.rng.random_range(0..5) == 0 {
                let a =
                    self.rng.random_range(1..=50) * if self.rng.random_bool(0.5) { 1 } else { -1 };
                let b = self.rng.random_range(1..=50);
                let (x, y) = self.point();
                QueryLine::new(a, b, -(a * x + b * y))
            } else {
                let lx = self.rng.random_range(1..=self.span);
                let ly = self.rng.random_range(1..=self.span);
                QueryLine::through(
                    (corner.0 + sx * lx, corner.1),
                    (corner.0, corner.1 + sy * ly),
                )
            };
            if let Ok(t) = hyp.and_then(|h| OrthoTriangle::new(corner, q, h)) {
                return t;
            }
        }
    }

    /// A canonical convex polygon with 4 to 16 vertices, inscribed in a
    /// random axis-aligned ellipse.
    pub fn polygon(&mut self) -> CanonicalPolygon {
        loop {
            let k = self.rng.random_range(4..=16);
            let (cx, cy) = self.point();
            let rx = self.rng.random_range(self.span / 50..=self.span / 2) as f64;
            let ry = self.rng.random_range(self.span / 50..=self.span / 2) as f64;
            let mut angles: Vec<f64> = (0..k)
                .map(|_| self.rng.random_range(0.0..std::f64::consts::TAU))
                .collect();
            angles.sort_by(f64::total_cmp);
            let ring: Vec<(i64, i64)> = angles
                .iter()
                .map(|t| {
                    (
                        cx + (rx * t.cos()).round() as i64,
                        cy + (ry * t.sin()).round() as i64,
                    )
                })
                .collect();
            let hull = convex_ring(ring);
            if hull.len() < 4 {
                continue;
            }
            if let Ok(p) = CanonicalPolygon::new(hull) {
                if is_canonical(&p) {
                    return p;
                }
            }
        }
    }
}

/// Strictly convex counterclockwise hull of `pts`.
fn convex_ring(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(i64, i64)>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2
                && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_points() {
        for d in Distribution::ALL {
            assert_eq!(generate_points(500, 7, d), generate_points(500, 7, d));
            assert_eq!(generate_points(500, 7, d).len(), 500);
        }
        assert_ne!(
            generate_points(50, 1, Distribution::Uniform),
            generate_points(50, 2, Distribution::Uniform)
        );
    }

    #[test]
    fn grid_of_square_size() {
        let s = generate_points(49, 3, Distribution::GridMinusDiagonal);
        assert_eq!(s.len(), 49);
        assert!(s.points().iter().all(|p| p.x >= 0 && p.y >= 0));
    }

    #[test]
    fn distribution_names_round_trip() {
        for d in Distribution::ALL {
            assert_eq!(d.name().parse::<Distribution>().unwrap(), d);
        }
        assert!("gaussian".parse::<Distribution>().is_err());
    }

    #[test]
    fn polygons_are_canonical_and_bounded() {
        let mut w = Workload::new(11);
        for _ in 0..50 {
            let p = w.polygon();
            assert!((4..=16).contains(&p.len()));
            assert!(is_canonical(&p));
        }
    }

    #[test]
    fn convex_ring_drops_collinear_points() {
        let ring = convex_ring(vec![(0, 0), (1, 0), (2, 0), (2, 2), (0, 2), (1, 1)]);
        assert_eq!(ring, vec![(0, 0), (2, 0), (2, 2), (0, 2)]);
    }
}
