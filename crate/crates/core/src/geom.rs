//! Exact integer geometry: points, query regions, predicates and the
//! point/line duality.
//!
//! Every predicate evaluates an integer polynomial in `i128`, so there is no
//! rounding anywhere. Coordinates are bounded by [`COORD_LIMIT`]; line
//! coefficients may use the full `i64` range.

use crate::error::{Error, Result};

/// Largest admissible absolute coordinate value.
pub const COORD_LIMIT: i64 = 1 << 30;

pub type PointId = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Point {
    pub id: PointId,
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(id: PointId, x: i64, y: i64) -> Self {
        Point { id, x, y }
    }

    /// Like [`Point::new`] but rejects coordinates outside [`COORD_LIMIT`].
    pub fn checked(id: PointId, x: i64, y: i64) -> Result<Self> {
        if in_range(x) && in_range(y) {
            Ok(Point { id, x, y })
        } else {
            Err(Error::CoordinateOutOfRange { x, y })
        }
    }

    #[inline]
    pub fn xy(&self) -> (i64, i64) {
        (self.x, self.y)
    }
}

#[inline]
pub(crate) fn in_range(v: i64) -> bool {
    (-COORD_LIMIT..=COORD_LIMIT).contains(&v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

/// Cross product `(q - p) x (r - p)`.
#[inline]
pub(crate) fn cross(p: (i64, i64), q: (i64, i64), r: (i64, i64)) -> i128 {
    let (ux, uy) = ((q.0 - p.0) as i128, (q.1 - p.1) as i128);
    let (vx, vy) = ((r.0 - p.0) as i128, (r.1 - p.1) as i128);
    ux * vy - uy * vx
}

pub fn orient_xy(p: (i64, i64), q: (i64, i64), r: (i64, i64)) -> Orientation {
    match cross(p, q, r).signum() {
        1 => Orientation::Ccw,
        -1 => Orientation::Cw,
        _ => Orientation::Collinear,
    }
}

pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    orient_xy(p.xy(), q.xy(), r.xy())
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The line `a*x + b*y + c = 0` in canonical form: `gcd(|a|,|b|,|c|) = 1` and
/// the first nonzero coefficient is positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QueryLine {
    a: i64,
    b: i64,
    c: i64,
}

impl QueryLine {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::canonical(a, b, c).map(|(l, _)| l)
    }

    /// Canonicalizes and reports whether the coefficients were negated.
    fn canonical(a: i64, b: i64, c: i64) -> Result<(Self, bool)> {
        if a == 0 && b == 0 {
            return Err(Error::DegenerateLine);
        }
        let g = gcd(gcd(a.unsigned_abs(), b.unsigned_abs()), c.unsigned_abs()) as i128;
        let (mut a, mut b, mut c) = (a as i128 / g, b as i128 / g, c as i128 / g);
        let lead = if a != 0 { a } else { b };
        let flipped = lead < 0;
        if flipped {
            (a, b, c) = (-a, -b, -c);
        }
        // |coefficient| <= 2^63 after dividing by g >= 1; only i64::MIN negated
        // can overflow.
        let fit = |v: i128| i64::try_from(v).map_err(|_| Error::DegenerateLine);
        Ok((
            QueryLine {
                a: fit(a)?,
                b: fit(b)?,
                c: fit(c)?,
            },
            flipped,
        ))
    }

    /// Line through two distinct points.
    pub fn through(p: (i64, i64), q: (i64, i64)) -> Result<Self> {
        let a = q.1 as i128 - p.1 as i128;
        let b = p.0 as i128 - q.0 as i128;
        let c = -(a * p.0 as i128 + b * p.1 as i128);
        let g = gcd_i128(gcd_i128(a, b), c).max(1);
        let fit = |v: i128| i64::try_from(v / g).map_err(|_| Error::DegenerateLine);
        Self::new(fit(a)?, fit(b)?, fit(c)?)
    }

    #[inline]
    pub fn a(&self) -> i64 {
        self.a
    }
    #[inline]
    pub fn b(&self) -> i64 {
        self.b
    }
    #[inline]
    pub fn c(&self) -> i64 {
        self.c
    }
    #[inline]
    pub fn coeffs(&self) -> (i64, i64, i64) {
        (self.a, self.b, self.c)
    }

    /// Exact value of `a*x + b*y + c`.
    #[inline]
    pub fn eval(&self, x: i64, y: i64) -> i128 {
        self.a as i128 * x as i128 + self.b as i128 * y as i128 + self.c as i128
    }

    pub fn is_axis_parallel(&self) -> bool {
        self.a == 0 || self.b == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LineSide {
    Positive,
    Zero,
    Negative,
}

fn sign_to_side(v: i128) -> LineSide {
    match v.signum() {
        1 => LineSide::Positive,
        -1 => LineSide::Negative,
        _ => LineSide::Zero,
    }
}

pub fn side_of_line(p: &Point, l: &QueryLine) -> LineSide {
    sign_to_side(l.eval(p.x, p.y))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HalfPlaneSide {
    /// `a*x + b*y + c >= 0`
    NonNegative,
    /// `a*x + b*y + c <= 0`
    NonPositive,
}

impl HalfPlaneSide {
    fn flip(self) -> Self {
        match self {
            HalfPlaneSide::NonNegative => HalfPlaneSide::NonPositive,
            HalfPlaneSide::NonPositive => HalfPlaneSide::NonNegative,
        }
    }
}

/// A closed half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HalfPlane {
    pub line: QueryLine,
    pub side: HalfPlaneSide,
}

impl HalfPlane {
    /// Half-plane `{a*x + b*y + c >= 0}` or `<= 0`, as written by the caller.
    /// Canonicalizing the line may negate it, in which case `side` is flipped
    /// so the region is unchanged.
    pub fn new(a: i64, b: i64, c: i64, side: HalfPlaneSide) -> Result<Self> {
        let (line, flipped) = QueryLine::canonical(a, b, c)?;
        let side = if flipped { side.flip() } else { side };
        Ok(HalfPlane { line, side })
    }

    pub fn from_line(line: QueryLine, side: HalfPlaneSide) -> Self {
        HalfPlane { line, side }
    }

    /// `a*x + b*y + c` oriented so that members are exactly the points where
    /// this is `>= 0`.
    #[inline]
    pub fn signed_eval(&self, x: i64, y: i64) -> i128 {
        let v = self.line.eval(x, y);
        match self.side {
            HalfPlaneSide::NonNegative => v,
            HalfPlaneSide::NonPositive => -v,
        }
    }

    #[inline]
    pub fn contains(&self, x: i64, y: i64) -> bool {
        self.signed_eval(x, y) >= 0
    }

    #[inline]
    pub fn contains_point(&self, p: &Point) -> bool {
        self.contains(p.x, p.y)
    }

    /// Direction in which `signed_eval` increases.
    pub fn inward_normal(&self) -> (i64, i64) {
        match self.side {
            HalfPlaneSide::NonNegative => (self.line.a, self.line.b),
            HalfPlaneSide::NonPositive => (-self.line.a, -self.line.b),
        }
    }
}

/// Direction of the two axis-parallel legs of an orthogonal triangle, seen
/// from its right-angle corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quadrant {
    NE,
    NW,
    SE,
    SW,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::NE, Quadrant::NW, Quadrant::SE, Quadrant::SW];

    /// `(sx, sy)` such that the quadrant of `(cx, cy)` is
    /// `sx*(x-cx) >= 0 && sy*(y-cy) >= 0`.
    pub fn signs(self) -> (i64, i64) {
        match self {
            Quadrant::NE => (1, 1),
            Quadrant::NW => (-1, 1),
            Quadrant::SE => (1, -1),
            Quadrant::SW => (-1, -1),
        }
    }

    pub fn from_signs(sx: i64, sy: i64) -> Self {
        match (sx >= 0, sy >= 0) {
            (true, true) => Quadrant::NE,
            (false, true) => Quadrant::NW,
            (true, false) => Quadrant::SE,
            (false, false) => Quadrant::SW,
        }
    }

    #[inline]
    pub fn contains(self, corner: (i64, i64), x: i64, y: i64) -> bool {
        let (sx, sy) = self.signs();
        let (dx, dy) = (x as i128 - corner.0 as i128, y as i128 - corner.1 as i128);
        sx as i128 * dx >= 0 && sy as i128 * dy >= 0
    }
}

/// A triangle with two axis-parallel legs meeting at `corner`, closed by a
/// non-axis-parallel hypotenuse. Membership is the closed quadrant of the
/// corner intersected with the closed corner side of the hypotenuse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrthoTriangle {
    corner: (i64, i64),
    quadrant: Quadrant,
    hyp: QueryLine,
}

impl OrthoTriangle {
    pub fn new(corner: (i64, i64), quadrant: Quadrant, hyp: QueryLine) -> Result<Self> {
        if hyp.is_axis_parallel() {
            return Err(Error::AxisParallelHypotenuse);
        }
        if hyp.eval(corner.0, corner.1) == 0 {
            return Err(Error::CornerOnHypotenuse);
        }
        Ok(OrthoTriangle {
            corner,
            quadrant,
            hyp,
        })
    }

    pub fn corner(&self) -> (i64, i64) {
        self.corner
    }
    pub fn quadrant(&self) -> Quadrant {
        self.quadrant
    }
    pub fn hyp(&self) -> QueryLine {
        self.hyp
    }

    /// The closed half-plane bounded by the hypotenuse that holds the corner.
    pub fn halfplane(&self) -> HalfPlane {
        let side = if self.hyp.eval(self.corner.0, self.corner.1) > 0 {
            HalfPlaneSide::NonNegative
        } else {
            HalfPlaneSide::NonPositive
        };
        HalfPlane::from_line(self.hyp, side)
    }

    #[inline]
    pub fn contains(&self, x: i64, y: i64) -> bool {
        self.quadrant.contains(self.corner, x, y) && self.halfplane().contains(x, y)
    }
}

pub fn point_in_triangle(p: &Point, t: &OrthoTriangle) -> bool {
    t.contains(p.x, p.y)
}

/// Closed axis-aligned rectangle; zero width or height is allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AxisRect {
    pub x_lo: i64,
    pub x_hi: i64,
    pub y_lo: i64,
    pub y_hi: i64,
}

impl AxisRect {
    pub fn new(x_lo: i64, x_hi: i64, y_lo: i64, y_hi: i64) -> Result<Self> {
        if x_lo > x_hi || y_lo > y_hi {
            return Err(Error::InvalidRect);
        }
        Ok(AxisRect {
            x_lo,
            x_hi,
            y_lo,
            y_hi,
        })
    }

    #[inline]
    pub fn contains(&self, x: i64, y: i64) -> bool {
        (self.x_lo..=self.x_hi).contains(&x) && (self.y_lo..=self.y_hi).contains(&y)
    }
}

/// Convex polygon with counterclockwise integer vertices. Whether it is
/// canonical (decomposable into orthogonal pieces) is decided by
/// [`crate::polygon::decompose`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalPolygon {
    vertices: Vec<(i64, i64)>,
}

impl CanonicalPolygon {
    pub fn new(vertices: Vec<(i64, i64)>) -> Result<Self> {
        let k = vertices.len();
        if k < 3 {
            return Err(Error::TooFewVertices);
        }
        if let Some(&(x, y)) = vertices.iter().find(|v| !in_range(v.0) || !in_range(v.1)) {
            return Err(Error::CoordinateOutOfRange { x, y });
        }
        let mut any_turn = false;
        for i in 0..k {
            let (p, q, r) = (vertices[i], vertices[(i + 1) % k], vertices[(i + 2) % k]);
            if p == q {
                return Err(Error::NotConvex("repeated vertex"));
            }
            match cross(p, q, r).signum() {
                -1 => return Err(Error::NotConvex("clockwise turn")),
                1 => any_turn = true,
                _ => {
                    // Collinear triple must continue forward, not fold back.
                    let d1 = (q.0 - p.0, q.1 - p.1);
                    let d2 = (r.0 - q.0, r.1 - q.1);
                    if (d1.0 as i128 * d2.0 as i128 + d1.1 as i128 * d2.1 as i128) <= 0 {
                        return Err(Error::NotConvex("edge folds back"));
                    }
                }
            }
        }
        if !any_turn {
            return Err(Error::NotConvex("all vertices collinear"));
        }
        // All left turns still admits multiply-wound rings (pentagrams); a
        // convex ring changes x- and y-direction exactly twice each.
        let changes = |f: fn((i64, i64), (i64, i64)) -> i64| {
            let dirs: Vec<i64> = (0..k)
                .map(|i| f(vertices[i], vertices[(i + 1) % k]).signum())
                .filter(|&s| s != 0)
                .collect();
            (0..dirs.len())
                .filter(|&i| dirs[i] != dirs[(i + 1) % dirs.len()])
                .count()
        };
        if changes(|p, q| q.0 - p.0) > 2 || changes(|p, q| q.1 - p.1) > 2 {
            return Err(Error::NotConvex("ring winds more than once"));
        }
        Ok(CanonicalPolygon { vertices })
    }

    pub fn vertices(&self) -> &[(i64, i64)] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = ((i64, i64), (i64, i64))> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| (self.vertices[i], self.vertices[(i + 1) % k]))
    }

    /// Closed membership: on the inner side of (or on) every edge.
    pub fn contains(&self, x: i64, y: i64) -> bool {
        self.edges().all(|(p, q)| cross(p, q, (x, y)) >= 0)
    }

    pub fn bbox(&self) -> AxisRect {
        let xs = self.vertices.iter().map(|v| v.0);
        let ys = self.vertices.iter().map(|v| v.1);
        AxisRect {
            x_lo: xs.clone().min().unwrap(),
            x_hi: xs.max().unwrap(),
            y_lo: ys.clone().min().unwrap(),
            y_hi: ys.max().unwrap(),
        }
    }
}

pub fn point_in_polygon(p: &Point, poly: &CanonicalPolygon) -> bool {
    poly.contains(p.x, p.y)
}

/// A point with rational coordinates `(x_num/den, y_num/den)`, `den > 0`,
/// stored in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    pub x_num: i128,
    pub y_num: i128,
    pub den: i128,
}

impl RationalPoint {
    /// Panics if `den == 0`.
    pub fn new(x_num: i128, y_num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd_i128(gcd_i128(x_num, y_num), den);
        let s = den.signum();
        RationalPoint {
            x_num: s * x_num / g,
            y_num: s * y_num / g,
            den: s * den / g,
        }
    }

    pub fn integer(x: i64, y: i64) -> Self {
        RationalPoint {
            x_num: x as i128,
            y_num: y as i128,
            den: 1,
        }
    }

    pub fn as_integer(&self) -> Option<(i64, i64)> {
        if self.den == 1 {
            Some((
                i64::try_from(self.x_num).ok()?,
                i64::try_from(self.y_num).ok()?,
            ))
        } else {
            None
        }
    }

    /// Sign of `l` evaluated at this point (exact; `den > 0`).
    pub fn side_of(&self, l: &QueryLine) -> LineSide {
        let v = l.a as i128 * self.x_num + l.b as i128 * self.y_num + l.c as i128 * self.den;
        sign_to_side(v)
    }
}

/// The region between two lines crossing at `apex`: the two opposite
/// sectors in which exactly one line separates a point from the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DoubleWedge {
    pub apex: RationalPoint,
    pub line1: QueryLine,
    pub line2: QueryLine,
}

impl DoubleWedge {
    /// Closed membership: `p` is on one of the lines, or exactly one line
    /// separates it from the origin. Canonical form may have negated a
    /// line, so each is first oriented to be positive at the origin.
    pub fn contains(&self, p: &RationalPoint) -> bool {
        let at = |l: &QueryLine| {
            let v = l.a as i128 * p.x_num + l.b as i128 * p.y_num + l.c as i128 * p.den;
            v.signum() * (l.c as i128).signum()
        };
        at(&self.line1) * at(&self.line2) <= 0
    }

    /// Whether the dual point of `l` lies in the wedge, i.e. whether `l`
    /// meets the primal segment.
    pub fn contains_dual_of(&self, l: &QueryLine) -> Result<bool> {
        Ok(self.contains(&dual_of_line(l)?))
    }
}

/// Dual of `(px, py)` in the chart `z = 1`: the line `px*x + py*y + 1 = 0`.
pub fn dual_of_point(p: &Point) -> Result<QueryLine> {
    if p.x == 0 && p.y == 0 {
        return Err(Error::PointAtOrigin);
    }
    QueryLine::new(p.x, p.y, 1)
}

/// Dual of `a*x + b*y + c = 0`: the point `(a/c, b/c)`.
pub fn dual_of_line(l: &QueryLine) -> Result<RationalPoint> {
    if l.c == 0 {
        return Err(Error::LineThroughOrigin);
    }
    Ok(RationalPoint::new(l.a as i128, l.b as i128, l.c as i128))
}

/// The set of lines meeting segment `pq`, as a double wedge in the dual
/// plane. Its apex is the dual of the segment's supporting line.
pub fn segment_to_double_wedge(p: &Point, q: &Point) -> Result<DoubleWedge> {
    if p.xy() == q.xy() {
        return Err(Error::DegenerateDual);
    }
    let line1 = dual_of_point(p).map_err(|_| Error::DegenerateDual)?;
    let line2 = dual_of_point(q).map_err(|_| Error::DegenerateDual)?;
    // Solve px*X + py*Y = -1, qx*X + qy*Y = -1.
    let det = p.x as i128 * q.y as i128 - p.y as i128 * q.x as i128;
    if det == 0 {
        return Err(Error::DegenerateDual);
    }
    let apex = RationalPoint::new(p.y as i128 - q.y as i128, q.x as i128 - p.x as i128, det);
    Ok(DoubleWedge { apex, line1, line2 })
}
