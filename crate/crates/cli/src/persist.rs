//! Saved indexes. The file holds the dataset and build options; structures
//! are rebuilt on load, which is deterministic.

use std::path::Path;

use polyret::{Point, PointSet};
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{CliError, Result};
use crate::run::{BuildOptions, Index};

const MAGIC: &str = "polyret-index";
const VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct IndexFile {
    format: String,
    version: u32,
    name: String,
    engine: String,
    cap: usize,
    checksum: String,
    /// `[id, x, y]` in id order.
    points: Vec<(u64, i64, i64)>,
}

pub fn save(path: &Path, dataset: &Dataset, options: BuildOptions) -> Result<()> {
    let file = IndexFile {
        format: MAGIC.into(),
        version: VERSION,
        name: dataset.name.clone(),
        engine: options.engine.name().into(),
        cap: options.cap,
        checksum: dataset.checksum.clone(),
        points: dataset
            .points
            .points()
            .iter()
            .map(|p| (p.id, p.x, p.y))
            .collect(),
    };
    let text = serde_json::to_string(&file).expect("index file serializes");
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// The dataset and options stored at `path`, checked against the stored
/// checksum.
pub fn load(path: &Path) -> Result<(Dataset, BuildOptions)> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let file: IndexFile =
        serde_json::from_str(&text).map_err(|e| CliError::Index(e.to_string()))?;
    if file.format != MAGIC || file.version != VERSION {
        return Err(CliError::Index(format!(
            "unsupported format {:?} version {}",
            file.format, file.version
        )));
    }
    let points = PointSet::new(
        file.points
            .iter()
            .map(|&(id, x, y)| Point::new(id, x, y))
            .collect(),
    )?;
    let dataset = Dataset::new(file.name, points, Some(path.to_path_buf()));
    if dataset.checksum != file.checksum {
        return Err(CliError::Index("checksum mismatch".into()));
    }
    let engine = file.engine.parse().map_err(CliError::Index)?;
    Ok((
        dataset,
        BuildOptions {
            engine,
            cap: file.cap,
        },
    ))
}

pub fn load_index(path: &Path) -> Result<Index> {
    let (dataset, options) = load(path)?;
    Index::build(dataset, options)
}
