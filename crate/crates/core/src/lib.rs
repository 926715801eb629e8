//! Output-sensitive planar range reporting over integer point sets.
//!
//! ```
//! use polyret::{OrthoTriangle, PointSet, Quadrant, QueryLine, ThreeLayerTree, TriangleEngine};
//!
//! let s = PointSet::from_coords(&[(0, 0), (3, 1), (1, 4), (6, 6)])?;
//! let tree = ThreeLayerTree::build(&s)?;
//! let t = OrthoTriangle::new((0, 0), Quadrant::NE, QueryLine::new(1, 1, -5)?)?;
//! let (ids, _stats) = tree.query_triangle(&t);
//! assert_eq!(ids, [0, 1, 2].into());
//! # Ok::<(), polyret::Error>(())
//! ```

pub mod error;
pub mod geom;
pub mod layers;
pub mod oracle;
pub mod plist;
pub mod polygon;
pub mod ppst;
pub mod pst;
pub mod triangle;
pub mod workload;

pub use error::{Error, Result};
pub use geom::{
    AxisRect, CanonicalPolygon, DoubleWedge, HalfPlane, HalfPlaneSide, LineSide, Orientation,
    OrthoTriangle, Point, PointId, Quadrant, QueryLine, RationalPoint,
};
pub use oracle::{IdSet, PointSet};
pub use polygon::{decompose, is_canonical, query_polygon, Decomposition, Piece};
pub use triangle::{ThreeLayerTree, TriangleEngine, TriangleStats, TwoLayerStructure};
