//! Doubling experiments: structure size and query counters as n doubles.

use std::time::Instant;

use polyret::ppst::PersistentPst;
use polyret::workload::Distribution;
use polyret::{ThreeLayerTree, TwoLayerStructure};
use serde::Serialize;

use crate::dataset::generate;
use crate::error::Result;
use crate::query::{generate_queries, Kind};
use crate::run::{run_queries, BuildOptions, EngineChoice, Index, RunOptions};

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub min_exp: u32,
    pub max_exp: u32,
    pub seed: u64,
    pub distribution: Distribution,
    /// Queries per kind at each size; 0 measures space only.
    pub queries: usize,
    /// Sizes the two-layer engine runs at.
    pub two_layer_sizes: Vec<usize>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            min_exp: 10,
            max_exp: 14,
            seed: 1,
            distribution: Distribution::Uniform,
            queries: 100,
            two_layer_sizes: vec![256, 512, 1024, 2048],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub structure: String,
    pub counter: String,
    pub n: usize,
    pub value: u64,
    /// `value` over the previous row's for the same structure.
    pub ratio: Option<f64>,
    pub build_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryRow {
    pub n: usize,
    pub queries: usize,
    pub records: usize,
    pub bound_violations: usize,
    pub oracle_mismatches: usize,
    pub mean_micros: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchTable {
    pub space: Vec<BenchRow>,
    pub queries: Vec<QueryRow>,
}

fn measure<T>(
    rows: &mut Vec<BenchRow>,
    structure: &str,
    counter: &str,
    n: usize,
    build: impl FnOnce() -> T,
    value: impl FnOnce(&T) -> usize,
) {
    let t = Instant::now();
    let built = build();
    let build_ms = t.elapsed().as_secs_f64() * 1e3;
    let value = value(&built) as u64;
    let ratio = rows
        .iter()
        .rev()
        .find(|r| r.structure == structure)
        .map(|r| value as f64 / r.value as f64);
    rows.push(BenchRow {
        structure: structure.into(),
        counter: counter.into(),
        n,
        value,
        ratio,
        build_ms,
    });
}

pub fn doubling_table(cfg: &BenchConfig) -> Result<BenchTable> {
    let mut space = Vec::new();
    let mut queries = Vec::new();
    for e in cfg.min_exp..=cfg.max_exp {
        let n = 1usize << e;
        let d = generate(n, cfg.seed, cfg.distribution);
        let s = &d.points;
        measure(
            &mut space,
            "ppst",
            "allocations",
            n,
            || PersistentPst::build(s).expect("generated points are valid"),
            |t| t.allocations(),
        );
        measure(
            &mut space,
            "3layer",
            "stored_multiplicity",
            n,
            || ThreeLayerTree::build(s).expect("generated points are valid"),
            |t| t.stored_multiplicity(),
        );
        if cfg.queries > 0 {
            let index = Index::build(
                d,
                BuildOptions {
                    engine: EngineChoice::ThreeLayer,
                    ..BuildOptions::default()
                },
            )?;
            let specs = generate_queries(&Kind::ALL, cfg.queries, cfg.seed + 1);
            let report = run_queries(
                &index,
                &specs,
                &RunOptions {
                    verify: true,
                    ..RunOptions::default()
                },
            )?;
            let total: f64 = report.records.iter().map(|r| r.micros).sum();
            queries.push(QueryRow {
                n,
                queries: specs.len(),
                records: report.records.len(),
                bound_violations: report.summary.bound_violations,
                oracle_mismatches: report.summary.oracle_mismatches,
                mean_micros: total / report.records.len().max(1) as f64,
            });
        }
    }
    for &n in &cfg.two_layer_sizes {
        let d = generate(n, cfg.seed, cfg.distribution);
        measure(
            &mut space,
            "2layer",
            "stored_multiplicity",
            n,
            || TwoLayerStructure::build_with_cap(&d.points, n).expect("size within its own cap"),
            |t| t.stored_multiplicity(),
        );
    }
    Ok(BenchTable { space, queries })
}

impl BenchTable {
    /// Every consecutive ratio of `structure` within `[lo, hi]`.
    pub fn ratios_within(&self, structure: &str, lo: f64, hi: f64) -> bool {
        self.space
            .iter()
            .filter(|r| r.structure == structure)
            .filter_map(|r| r.ratio)
            .all(|r| (lo..=hi).contains(&r))
    }

    pub fn to_jsonl(&self) -> String {
        #[derive(Serialize)]
        #[serde(tag = "record", rename_all = "lowercase")]
        enum Line<'a> {
            Space(&'a BenchRow),
            Queries(&'a QueryRow),
        }
        let mut s = String::new();
        let lines = self
            .space
            .iter()
            .map(Line::Space)
            .chain(self.queries.iter().map(Line::Queries));
        for line in lines {
            s.push_str(&serde_json::to_string(&line).expect("bench rows serialize"));
            s.push('\n');
        }
        s
    }
}
