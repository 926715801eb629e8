//! Machine-readable run reports.
//!
//! A report is JSONL: one record per (query, engine) in query order, then a
//! summary. Wall-clock fields are excluded from the checksum so two runs over
//! the same inputs hash identically.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::dataset::hex_digest;
use crate::query::Kind;

/// Field names that carry wall-clock time.
pub const TIMING_FIELDS: [&str; 2] = ["micros", "build_ms"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryRecord {
    pub index: usize,
    pub kind: Kind,
    pub engine: String,
    pub answer_size: usize,
    /// SHA-256 of the sorted answer ids, one per line.
    pub answer_digest: String,
    pub counters: BTreeMap<String, u64>,
    /// Counter checked against `bound`.
    pub bound_counter: String,
    pub bound_value: u64,
    pub bound: u64,
    pub within_bound: bool,
    /// Agreement with a linear scan, when verification is on.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    /// Agreement with the query file's `expected` ids, when present.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_match: Option<bool>,
    pub micros: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BuildRecord {
    pub engine: String,
    pub build_ms: f64,
    pub counters: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub dataset: String,
    pub dataset_checksum: String,
    pub n: usize,
    pub engines: Vec<String>,
    pub builds: Vec<BuildRecord>,
    pub queries: usize,
    pub records: usize,
    pub bound_violations: usize,
    pub oracle_mismatches: usize,
    pub expected_mismatches: usize,
    /// Queries on which two engines returned different id sets.
    pub engine_disagreements: usize,
    pub checksum: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub records: Vec<QueryRecord>,
    pub summary: Summary,
}

#[derive(Serialize)]
#[serde(tag = "record", rename_all = "lowercase")]
enum Line<'a> {
    Query(&'a QueryRecord),
    Summary(&'a Summary),
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            for f in TIMING_FIELDS {
                map.remove(f);
            }
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

impl BenchReport {
    pub fn new(records: Vec<QueryRecord>, mut summary: Summary) -> Self {
        summary.checksum.clear();
        let mut report = BenchReport { records, summary };
        report.summary.checksum = report.compute_checksum();
        report
    }

    /// Hash over every record and the summary, minus timing fields and the
    /// checksum itself.
    pub fn compute_checksum(&self) -> String {
        let mut text = String::new();
        for line in self.lines() {
            let mut v = serde_json::to_value(&line).expect("report serializes");
            strip_timing(&mut v);
            if let Value::Object(map) = &mut v {
                map.remove("checksum");
            }
            text.push_str(&v.to_string());
            text.push('\n');
        }
        hex_digest(text.as_bytes())
    }

    fn lines(&self) -> impl Iterator<Item = Line<'_>> {
        self.records
            .iter()
            .map(Line::Query)
            .chain(std::iter::once(Line::Summary(&self.summary)))
    }

    pub fn to_jsonl(&self) -> String {
        let mut s = String::new();
        for line in self.lines() {
            s.push_str(&serde_json::to_string(&line).expect("report serializes"));
            s.push('\n');
        }
        s
    }

    /// No oracle or fixture mismatch, no engine disagreement, no counter
    /// bound violation.
    pub fn is_clean(&self) -> bool {
        let s = &self.summary;
        s.oracle_mismatches == 0
            && s.expected_mismatches == 0
            && s.engine_disagreements == 0
            && s.bound_violations == 0
    }
}
