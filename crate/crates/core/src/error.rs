use crate::geom::PointId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("coordinate ({x}, {y}) outside the supported range of +/-2^30")]
    CoordinateOutOfRange { x: i64, y: i64 },
    #[error("line coefficients a and b are both zero")]
    DegenerateLine,
    #[error("hypotenuse of an orthogonal triangle must not be axis-parallel")]
    AxisParallelHypotenuse,
    #[error("triangle corner lies on its hypotenuse")]
    CornerOnHypotenuse,
    #[error("rectangle bounds are inverted")]
    InvalidRect,
    #[error("polygon must have at least 3 vertices")]
    TooFewVertices,
    #[error("polygon is not convex and counterclockwise: {0}")]
    NotConvex(&'static str),
    #[error("line passes through the origin; its dual point is at infinity")]
    LineThroughOrigin,
    #[error("the origin has no affine dual line")]
    PointAtOrigin,
    #[error("segment has no finite dual double wedge")]
    DegenerateDual,
    #[error("input point set is empty")]
    EmptyInput,
    #[error("duplicate point at ({x}, {y})")]
    DuplicatePoint { x: i64, y: i64 },
    #[error("duplicate point id {0}")]
    DuplicateId(PointId),
    #[error("{n} points exceed the configured cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("polygon is not canonical: {0}")]
    NotCanonical(&'static str),
}
