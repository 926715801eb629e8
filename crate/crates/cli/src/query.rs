//! Query files: one kind-tagged JSON object per line.
//!
//! ```text
//! {"kind":"halfplane","line":[1,-2,5],"side":"nonneg"}
//! {"kind":"quadrant","b":10,"c":20}
//! {"kind":"rect","x_lo":0,"x_hi":9,"y_lo":0,"y_hi":4}
//! {"kind":"triangle","corner":[0,0],"quadrant":"NE","line":[1,1,-8]}
//! {"kind":"polygon","vertices":[[0,0],[4,0],[4,4],[0,4]],"expected":[3,9]}
//! ```

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use polyret::workload::Workload;
use polyret::{
    AxisRect, CanonicalPolygon, HalfPlane, HalfPlaneSide, IdSet, OrthoTriangle, Quadrant, QueryLine,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Halfplane,
    Quadrant,
    Rect,
    Triangle,
    Polygon,
}

impl Kind {
    pub const ALL: [Kind; 5] = [
        Kind::Halfplane,
        Kind::Quadrant,
        Kind::Rect,
        Kind::Triangle,
        Kind::Polygon,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Halfplane => "halfplane",
            Kind::Quadrant => "quadrant",
            Kind::Rect => "rect",
            Kind::Triangle => "triangle",
            Kind::Polygon => "polygon",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown query kind {s:?}"))
    }
}

/// A validated query region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Halfplane(HalfPlane),
    Quadrant { b: i64, c: i64 },
    Rect(AxisRect),
    Triangle(OrthoTriangle),
    Polygon(CanonicalPolygon),
}

impl Query {
    pub fn kind(&self) -> Kind {
        match self {
            Query::Halfplane(_) => Kind::Halfplane,
            Query::Quadrant { .. } => Kind::Quadrant,
            Query::Rect(_) => Kind::Rect,
            Query::Triangle(_) => Kind::Triangle,
            Query::Polygon(_) => Kind::Polygon,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuerySpec {
    pub query: Query,
    pub expected: Option<IdSet>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Side {
    Nonneg,
    Nonpos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
enum QuadrantName {
    NE,
    NW,
    SE,
    SW,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum Wire {
    Halfplane {
        line: [i64; 3],
        side: Side,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expected: Option<Vec<u64>>,
    },
    Quadrant {
        b: i64,
        c: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expected: Option<Vec<u64>>,
    },
    Rect {
        x_lo: i64,
        x_hi: i64,
        y_lo: i64,
        y_hi: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expected: Option<Vec<u64>>,
    },
    Triangle {
        corner: [i64; 2],
        quadrant: QuadrantName,
        line: [i64; 3],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expected: Option<Vec<u64>>,
    },
    Polygon {
        vertices: Vec<[i64; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expected: Option<Vec<u64>>,
    },
}

fn quadrant_from(q: QuadrantName) -> Quadrant {
    match q {
        QuadrantName::NE => Quadrant::NE,
        QuadrantName::NW => Quadrant::NW,
        QuadrantName::SE => Quadrant::SE,
        QuadrantName::SW => Quadrant::SW,
    }
}

fn quadrant_name(q: Quadrant) -> QuadrantName {
    match q {
        Quadrant::NE => QuadrantName::NE,
        Quadrant::NW => QuadrantName::NW,
        Quadrant::SE => QuadrantName::SE,
        Quadrant::SW => QuadrantName::SW,
    }
}

impl Wire {
    fn into_spec(self) -> polyret::Result<QuerySpec> {
        let (query, expected) = match self {
            Wire::Halfplane {
                line: [a, b, c],
                side,
                expected,
            } => {
                let side = match side {
                    Side::Nonneg => HalfPlaneSide::NonNegative,
                    Side::Nonpos => HalfPlaneSide::NonPositive,
                };
                (Query::Halfplane(HalfPlane::new(a, b, c, side)?), expected)
            }
            Wire::Quadrant { b, c, expected } => (Query::Quadrant { b, c }, expected),
            Wire::Rect {
                x_lo,
                x_hi,
                y_lo,
                y_hi,
                expected,
            } => (
                Query::Rect(AxisRect::new(x_lo, x_hi, y_lo, y_hi)?),
                expected,
            ),
            Wire::Triangle {
                corner: [x, y],
                quadrant,
                line: [a, b, c],
                expected,
            } => (
                Query::Triangle(OrthoTriangle::new(
                    (x, y),
                    quadrant_from(quadrant),
                    QueryLine::new(a, b, c)?,
                )?),
                expected,
            ),
            Wire::Polygon { vertices, expected } => (
                Query::Polygon(CanonicalPolygon::new(
                    vertices.into_iter().map(|[x, y]| (x, y)).collect(),
                )?),
                expected,
            ),
        };
        Ok(QuerySpec {
            query,
            expected: expected.map(|v| v.into_iter().collect()),
        })
    }

    fn from_spec(spec: &QuerySpec) -> Self {
        let expected = spec.expected.as_ref().map(|s| s.iter().copied().collect());
        match &spec.query {
            Query::Halfplane(h) => {
                let (a, b, c) = h.line.coeffs();
                Wire::Halfplane {
                    line: [a, b, c],
                    side: match h.side {
                        HalfPlaneSide::NonNegative => Side::Nonneg,
                        HalfPlaneSide::NonPositive => Side::Nonpos,
                    },
                    expected,
                }
            }
            &Query::Quadrant { b, c } => Wire::Quadrant { b, c, expected },
            Query::Rect(r) => Wire::Rect {
                x_lo: r.x_lo,
                x_hi: r.x_hi,
                y_lo: r.y_lo,
                y_hi: r.y_hi,
                expected,
            },
            Query::Triangle(t) => {
                let (a, b, c) = t.hyp().coeffs();
                Wire::Triangle {
                    corner: [t.corner().0, t.corner().1],
                    quadrant: quadrant_name(t.quadrant()),
                    line: [a, b, c],
                    expected,
                }
            }
            Query::Polygon(p) => Wire::Polygon {
                vertices: p.vertices().iter().map(|&(x, y)| [x, y]).collect(),
                expected,
            },
        }
    }
}

/// Parse a query file. Blank lines are skipped; errors carry the 1-based
/// line number.
pub fn parse_queries(text: &str) -> Result<Vec<QuerySpec>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let wire: Wire = serde_json::from_str(line).map_err(|e| CliError::Parse {
            line: i + 1,
            column: e.column(),
            message: e.to_string(),
        })?;
        let spec = wire.into_spec().map_err(|e| CliError::InvalidQuery {
            index: out.len(),
            message: format!("line {}: {e}", i + 1),
        })?;
        out.push(spec);
    }
    Ok(out)
}

pub fn read_queries(path: &Path) -> Result<Vec<QuerySpec>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_queries(&text)
}

pub fn to_jsonl(specs: &[QuerySpec]) -> String {
    let mut s = String::new();
    for spec in specs {
        s.push_str(&serde_json::to_string(&Wire::from_spec(spec)).expect("wire form serializes"));
        s.push('\n');
    }
    s
}

/// `count` queries of each kind, interleaved round-robin in the order given.
pub fn generate_queries(kinds: &[Kind], count: usize, seed: u64) -> Vec<QuerySpec> {
    let mut w = Workload::new(seed);
    let mut out = Vec::with_capacity(kinds.len() * count);
    for _ in 0..count {
        for &k in kinds {
            let query = match k {
                Kind::Halfplane => Query::Halfplane(w.halfplane()),
                Kind::Quadrant => {
                    let (b, c) = w.quadrant();
                    Query::Quadrant { b, c }
                }
                Kind::Rect => Query::Rect(w.rect()),
                Kind::Triangle => Query::Triangle(w.triangle()),
                Kind::Polygon => Query::Polygon(w.polygon()),
            };
            out.push(QuerySpec {
                query,
                expected: None,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_lines_parse() {
        let text = r#"{"kind":"halfplane","line":[1,-2,5],"side":"nonneg"}
{"kind":"quadrant","b":10,"c":20}

{"kind":"rect","x_lo":0,"x_hi":9,"y_lo":0,"y_hi":4}
{"kind":"triangle","corner":[0,0],"quadrant":"NE","line":[1,1,-8]}
{"kind":"polygon","vertices":[[0,0],[4,0],[4,4],[0,4]],"expected":[3,9]}
"#;
        let specs = parse_queries(text).unwrap();
        let kinds: Vec<Kind> = specs.iter().map(|s| s.query.kind()).collect();
        assert_eq!(kinds, Kind::ALL);
        assert_eq!(specs[4].expected, Some([3, 9].into()));
        assert_eq!(parse_queries(&to_jsonl(&specs)).unwrap(), specs);
    }

    #[test]
    fn invalid_parameters_rejected_at_parse_time() {
        let bad = [
            r#"{"kind":"rect","x_lo":5,"x_hi":0,"y_lo":0,"y_hi":4}"#,
            r#"{"kind":"triangle","corner":[0,0],"quadrant":"NE","line":[0,1,-8]}"#,
            r#"{"kind":"halfplane","line":[0,0,1],"side":"nonpos"}"#,
            r#"{"kind":"polygon","vertices":[[0,0],[4,0],[1,1],[0,4]]}"#,
        ];
        for line in bad {
            assert!(
                matches!(
                    parse_queries(line),
                    Err(CliError::InvalidQuery { index: 0, .. })
                ),
                "{line}"
            );
        }
        assert!(matches!(
            parse_queries(r#"{"kind":"circle","r":1}"#),
            Err(CliError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn generated_files_round_trip() {
        let specs = generate_queries(&Kind::ALL, 40, 3);
        assert_eq!(specs.len(), 200);
        assert_eq!(specs[7].query.kind(), Kind::Rect);
        let text = to_jsonl(&specs);
        assert_eq!(parse_queries(&text).unwrap(), specs);
        assert_eq!(to_jsonl(&generate_queries(&Kind::ALL, 40, 3)), text);
    }
}
