//! Point files: `id,x,y` CSV or one `{"id", "x", "y"}` object per line.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use polyret::geom::COORD_LIMIT;
use polyret::workload::{generate_points, Distribution};
use polyret::{Point, PointSet};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Jsonl,
}

impl Format {
    /// Guess from the file extension; anything but `.jsonl` is CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl") | Some("ndjson") => Format::Jsonl,
            _ => Format::Csv,
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" => Ok(Format::Jsonl),
            _ => Err(format!("unknown format {s:?} (expected csv or jsonl)")),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointRecord {
    id: u64,
    x: i64,
    y: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    pub name: String,
    pub points: PointSet,
    pub source: Option<PathBuf>,
    /// SHA-256 of the canonical CSV form, hex encoded.
    pub checksum: String,
}

impl Dataset {
    pub fn new(name: impl Into<String>, points: PointSet, source: Option<PathBuf>) -> Self {
        let checksum = hex_digest(to_csv(&points).as_bytes());
        Dataset {
            name: name.into(),
            points,
            source,
            checksum,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn serialize(&self, format: Format) -> String {
        match format {
            Format::Csv => to_csv(&self.points),
            Format::Jsonl => to_jsonl(&self.points),
        }
    }
}

pub(crate) fn hex_digest(bytes: &[u8]) -> String {
    let out = Sha256::digest(bytes);
    out.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// One `id,x,y` line per point in id order, no header.
pub fn to_csv(points: &PointSet) -> String {
    let mut s = String::with_capacity(points.len() * 20);
    for p in points.points() {
        let _ = writeln!(s, "{},{},{}", p.id, p.x, p.y);
    }
    s
}

pub fn to_jsonl(points: &PointSet) -> String {
    let mut s = String::with_capacity(points.len() * 32);
    for p in points.points() {
        let r = PointRecord {
            id: p.id,
            x: p.x,
            y: p.y,
        };
        s.push_str(&serde_json::to_string(&r).expect("plain struct serializes"));
        s.push('\n');
    }
    s
}

pub fn parse(text: &str, format: Format) -> Result<PointSet> {
    let mut check = Checker::default();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let p = match format {
            Format::Csv => {
                if i == 0 && line.trim_end() == "id,x,y" {
                    continue;
                }
                parse_csv_line(line.strip_suffix('\r').unwrap_or(line), line_no)?
            }
            Format::Jsonl => {
                let r: PointRecord = serde_json::from_str(line).map_err(|e| CliError::Parse {
                    line: line_no,
                    column: e.column(),
                    message: e.to_string(),
                })?;
                Point::new(r.id, r.x, r.y)
            }
        };
        check.push(p, line_no)?;
    }
    Ok(PointSet::new(check.points)?)
}

fn parse_csv_line(line: &str, line_no: usize) -> Result<Point> {
    let mut fields = [0i64; 3];
    let mut column = 1;
    let mut parts = line.split(',');
    for (k, name) in ["id", "x", "y"].into_iter().enumerate() {
        let Some(raw) = parts.next() else {
            return Err(CliError::Parse {
                line: line_no,
                column: line.chars().count() + 1,
                message: format!("missing field {name}"),
            });
        };
        fields[k] = raw.parse().map_err(|e| CliError::Parse {
            line: line_no,
            column,
            message: format!("field {name}: {e}"),
        })?;
        column += raw.chars().count() + 1;
    }
    if parts.next().is_some() {
        return Err(CliError::Parse {
            line: line_no,
            column: column - 1,
            message: "more than three fields".into(),
        });
    }
    if fields[0] < 0 {
        return Err(CliError::Parse {
            line: line_no,
            column: 1,
            message: "negative id".into(),
        });
    }
    Ok(Point::new(fields[0] as u64, fields[1], fields[2]))
}

#[derive(Default)]
struct Checker {
    points: Vec<Point>,
    coords: HashMap<(i64, i64), usize>,
    ids: HashMap<u64, usize>,
}

impl Checker {
    fn push(&mut self, p: Point, line: usize) -> Result<()> {
        if p.x.abs() > COORD_LIMIT || p.y.abs() > COORD_LIMIT {
            return Err(CliError::CoordinateOutOfRange {
                line,
                x: p.x,
                y: p.y,
            });
        }
        if self.coords.insert((p.x, p.y), line).is_some() {
            return Err(CliError::DuplicatePoint {
                line,
                x: p.x,
                y: p.y,
            });
        }
        if let Some(first) = self.ids.insert(p.id, line) {
            return Err(CliError::Parse {
                line,
                column: 1,
                message: format!("id {} already used on line {first}", p.id),
            });
        }
        self.points.push(p);
        Ok(())
    }
}

pub fn ingest(path: &Path, format: Option<Format>) -> Result<Dataset> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let format = format.unwrap_or_else(|| Format::from_path(path));
    let points = parse(&text, format)?;
    let name = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("dataset")
        .to_string();
    Ok(Dataset::new(name, points, Some(path.to_path_buf())))
}

pub fn write(dataset: &Dataset, path: &Path, format: Format) -> Result<()> {
    std::fs::write(path, dataset.serialize(format)).map_err(|e| CliError::io(path, e))
}

pub fn generate(n: usize, seed: u64, dist: Distribution) -> Dataset {
    Dataset::new(
        format!("{dist}-{n}-s{seed}"),
        generate_points(n, seed, dist),
        None,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_line_csv() {
        let s = parse("1,0,0\n2,5,5", Format::Csv).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.points()[1], Point::new(2, 5, 5));
    }

    #[test]
    fn header_and_crlf_accepted() {
        let s = parse("id,x,y\r\n7,1,2\r\n", Format::Csv).unwrap();
        assert_eq!(s.points(), &[Point::new(7, 1, 2)]);
    }

    #[test]
    fn error_positions() {
        match parse("1,0,0\n2,5,x5", Format::Csv) {
            Err(CliError::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("{other:?}"),
        }
        match parse("1,0", Format::Csv) {
            Err(CliError::Parse { line, column, .. }) => assert_eq!((line, column), (1, 4)),
            other => panic!("{other:?}"),
        }
        match parse("1,0,0,9", Format::Csv) {
            Err(CliError::Parse { column, .. }) => assert_eq!(column, 6),
            other => panic!("{other:?}"),
        }
        match parse(
            "{\"id\":1,\"x\":0,\"y\":0}\n{\"id\":2,\"x\":true}",
            Format::Jsonl,
        ) {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn duplicates_and_range() {
        assert!(matches!(
            parse("1,3,4\n2,3,4", Format::Csv),
            Err(CliError::DuplicatePoint {
                line: 2,
                x: 3,
                y: 4
            })
        ));
        assert!(matches!(
            parse("1,0,0\n1,3,4", Format::Csv),
            Err(CliError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse("1,0,2000000000", Format::Csv),
            Err(CliError::CoordinateOutOfRange { line: 1, .. })
        ));
    }

    #[test]
    fn formats_agree() {
        let d = generate(300, 4, Distribution::Clustered);
        for f in [Format::Csv, Format::Jsonl] {
            assert_eq!(parse(&d.serialize(f), f).unwrap(), d.points);
        }
    }
}
