//! Building engines over a dataset and replaying a query file against them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use polyret::layers::LayerStructure;
use polyret::oracle::{scan_halfplane, scan_polygon, scan_quadrant, scan_rect, scan_triangle};
use polyret::ppst::PersistentPst;
use polyret::pst::PrioritySearchTree;
use polyret::triangle::DEFAULT_CAP;
use polyret::{
    decompose, query_polygon, Error, IdSet, Piece, ThreeLayerTree, TriangleEngine, TriangleStats,
    TwoLayerStructure,
};

use crate::dataset::{hex_digest, Dataset};
use crate::error::{CliError, Result};
use crate::query::{Query, QuerySpec};
use crate::report::{BenchReport, BuildRecord, QueryRecord, Summary};

/// Which triangle engines to build. Half-plane and quadrant queries always
/// run on their own structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineChoice {
    ThreeLayer,
    TwoLayer,
    All,
}

impl EngineChoice {
    pub fn name(self) -> &'static str {
        match self {
            EngineChoice::ThreeLayer => "3layer",
            EngineChoice::TwoLayer => "2layer",
            EngineChoice::All => "all",
        }
    }

    fn three(self) -> bool {
        self != EngineChoice::TwoLayer
    }

    fn two(self) -> bool {
        self != EngineChoice::ThreeLayer
    }
}

impl fmt::Display for EngineChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EngineChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "3layer" => Ok(EngineChoice::ThreeLayer),
            "2layer" => Ok(EngineChoice::TwoLayer),
            "all" => Ok(EngineChoice::All),
            _ => Err(format!(
                "unknown engine {s:?} (expected 3layer, 2layer or all)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub engine: EngineChoice,
    /// Largest input the quadratic two-layer engine accepts.
    pub cap: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            engine: EngineChoice::ThreeLayer,
            cap: DEFAULT_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    /// Compare every answer with a linear scan.
    pub verify: bool,
    /// Answer non-canonical polygons by scanning instead of failing.
    pub fallback_scan: bool,
    /// Worker threads; 0 picks the available parallelism.
    pub threads: usize,
}

/// Every structure a run needs, built once.
pub struct Index {
    pub dataset: Dataset,
    pub options: BuildOptions,
    pub layers: LayerStructure,
    pub pst: PrioritySearchTree,
    pub ppst: PersistentPst,
    pub three: Option<ThreeLayerTree>,
    pub two: Option<TwoLayerStructure>,
    pub builds: Vec<BuildRecord>,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed().as_secs_f64() * 1e3)
}

fn counters<const N: usize>(pairs: [(&str, u64); N]) -> BTreeMap<String, u64> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

impl Index {
    pub fn build(dataset: Dataset, options: BuildOptions) -> Result<Self> {
        let s = &dataset.points;
        let mut builds = Vec::new();
        let (layers, ms) = timed(|| LayerStructure::build(s));
        let layers = layers?;
        builds.push(BuildRecord {
            engine: "layers".into(),
            build_ms: ms,
            counters: counters([("layers", layers.layer_count() as u64)]),
        });
        let (pst, ms) = timed(|| PrioritySearchTree::build(s));
        let pst = pst?;
        builds.push(BuildRecord {
            engine: "pst".into(),
            build_ms: ms,
            counters: counters([("height", pst.height() as u64)]),
        });
        let (ppst, ms) = timed(|| PersistentPst::build(s));
        let ppst = ppst?;
        builds.push(BuildRecord {
            engine: "ppst".into(),
            build_ms: ms,
            counters: counters([("allocations", ppst.allocations() as u64)]),
        });
        let three = if options.engine.three() {
            let (t, ms) = timed(|| ThreeLayerTree::build(s));
            let t = t?;
            builds.push(BuildRecord {
                engine: "3layer".into(),
                build_ms: ms,
                counters: counters([("stored_multiplicity", t.stored_multiplicity() as u64)]),
            });
            Some(t)
        } else {
            None
        };
        let two = if options.engine.two() {
            let (t, ms) = timed(|| TwoLayerStructure::build_with_cap(s, options.cap));
            let t = t.map_err(|e| match e {
                Error::CapExceeded { .. } => CliError::EngineCapExceeded(e),
                e => e.into(),
            })?;
            builds.push(BuildRecord {
                engine: "2layer".into(),
                build_ms: ms,
                counters: counters([("stored_multiplicity", t.stored_multiplicity() as u64)]),
            });
            Some(t)
        } else {
            None
        };
        Ok(Index {
            dataset,
            options,
            layers,
            pst,
            ppst,
            three,
            two,
            builds,
        })
    }

    fn triangle_engines(&self) -> Vec<&dyn TriangleEngine> {
        let mut v: Vec<&dyn TriangleEngine> = Vec::new();
        if let Some(t) = &self.three {
            v.push(t);
        }
        if let Some(t) = &self.two {
            v.push(t);
        }
        v
    }

    fn engine_names(&self) -> Vec<String> {
        let mut v = vec!["layers".to_string(), "pst".into(), "ppst".into()];
        v.extend(self.triangle_engines().iter().map(|e| e.name().to_string()));
        v
    }
}

fn ceil_log2(n: usize) -> u64 {
    (n.next_power_of_two().trailing_zeros() as u64).max(1)
}

fn answer_digest(ids: &IdSet) -> String {
    let mut s = String::with_capacity(ids.len() * 8);
    for id in ids {
        s.push_str(&id.to_string());
        s.push('\n');
    }
    hex_digest(s.as_bytes())
}

/// One engine's answer before it becomes a record.
struct Answer {
    engine: String,
    ids: IdSet,
    counters: BTreeMap<String, u64>,
    bound_counter: &'static str,
    bound_value: u64,
    bound: u64,
    micros: f64,
}

fn triangle_answer(
    e: &dyn TriangleEngine,
    l: u64,
    pieces: u64,
    triangles: u64,
    f: impl FnOnce() -> (IdSet, TriangleStats),
) -> Answer {
    let t = Instant::now();
    let (ids, st) = f();
    let micros = t.elapsed().as_secs_f64() * 1e6;
    let a = ids.len() as u64;
    // The three-layer overhead is polylogarithmic per piece; the two-layer
    // engine pays a logarithmic term per reported point per triangle.
    let (bound_counter, bound_value, bound) = if e.name() == "2layer" {
        (
            "nodes_visited",
            st.nodes_visited,
            triangles * 8 * (l + (a + 1) * l),
        )
    } else {
        (
            "non_output_visited",
            st.nodes_visited.saturating_sub(a),
            pieces * 8 * l * l * l,
        )
    };
    Answer {
        engine: e.name().to_string(),
        ids,
        counters: counters([
            ("nodes_visited", st.nodes_visited),
            ("substructures_queried", st.substructures_queried),
        ]),
        bound_counter,
        bound_value,
        bound,
        micros,
    }
}

fn answer_one(index: &Index, i: usize, q: &Query, opts: &RunOptions) -> Result<Vec<Answer>> {
    let n = index.dataset.len();
    let l = ceil_log2(n);
    let mut out = Vec::new();
    match q {
        Query::Halfplane(h) => {
            let t = Instant::now();
            let (ids, st) = index.layers.report_halfplane(h);
            let a = ids.len() as u64;
            out.push(Answer {
                engine: "layers".into(),
                ids,
                counters: counters([
                    ("vertices_visited", st.vertices_visited),
                    ("layers_tested", st.layers_tested),
                ]),
                bound_counter: "vertices_visited",
                bound_value: st.vertices_visited,
                bound: 8 * ((a + 1) * l + 1),
                micros: t.elapsed().as_secs_f64() * 1e6,
            });
        }
        &Query::Quadrant { b, c } => {
            let t = Instant::now();
            let (ids, st) = index.pst.query(b, c);
            let a = ids.len() as u64;
            out.push(Answer {
                engine: "pst".into(),
                ids,
                counters: counters([("nodes_visited", st.nodes_visited)]),
                bound_counter: "nodes_visited",
                bound_value: st.nodes_visited,
                bound: 4 * (l + a + 1),
                micros: t.elapsed().as_secs_f64() * 1e6,
            });
            let t = Instant::now();
            let (ids, st) = index.ppst.query(b, c);
            out.push(Answer {
                engine: "ppst".into(),
                ids,
                counters: counters([("list_nodes_visited", st.list_nodes_visited)]),
                bound_counter: "list_nodes_visited",
                bound_value: st.list_nodes_visited,
                bound: 4 * (a + 2),
                micros: t.elapsed().as_secs_f64() * 1e6,
            });
        }
        Query::Rect(r) => {
            for e in index.triangle_engines() {
                out.push(triangle_answer(e, l, 1, 4, || e.query_rect(r)));
            }
        }
        Query::Triangle(t) => {
            for e in index.triangle_engines() {
                out.push(triangle_answer(e, l, 1, 1, || e.query_triangle(t)));
            }
        }
        Query::Polygon(p) => match decompose(p) {
            Ok(d) => {
                let pieces = d.pieces.len() as u64;
                let triangles = d
                    .pieces
                    .iter()
                    .map(|p| match p {
                        Piece::Rect(_) => 4,
                        Piece::Triangle(_) => 1,
                    })
                    .sum();
                for e in index.triangle_engines() {
                    out.push(triangle_answer(e, l, pieces, triangles, || {
                        query_polygon(e, &d)
                    }));
                }
            }
            Err(e @ Error::NotCanonical(_)) if !opts.fallback_scan => {
                return Err(CliError::NotCanonical {
                    index: i,
                    source: e,
                });
            }
            Err(Error::NotCanonical(_)) => {
                let t = Instant::now();
                let ids = scan_polygon(&index.dataset.points, p);
                out.push(Answer {
                    engine: "scan".into(),
                    ids,
                    counters: counters([("points_scanned", n as u64)]),
                    bound_counter: "points_scanned",
                    bound_value: n as u64,
                    bound: n as u64,
                    micros: t.elapsed().as_secs_f64() * 1e6,
                });
            }
            Err(e) => return Err(e.into()),
        },
    }
    Ok(out)
}

fn oracle(index: &Index, q: &Query) -> IdSet {
    let s = &index.dataset.points;
    match q {
        Query::Halfplane(h) => scan_halfplane(s, h),
        &Query::Quadrant { b, c } => scan_quadrant(s, b, c),
        Query::Rect(r) => scan_rect(s, r),
        Query::Triangle(t) => scan_triangle(s, t),
        Query::Polygon(p) => scan_polygon(s, p),
    }
}

/// Per-query outcome before aggregation.
struct Outcome {
    records: Vec<QueryRecord>,
    disagreement: bool,
}

fn run_one(index: &Index, i: usize, spec: &QuerySpec, opts: &RunOptions) -> Result<Outcome> {
    let answers = answer_one(index, i, &spec.query, opts)?;
    let truth = opts.verify.then(|| oracle(index, &spec.query));
    let disagreement = answers.windows(2).any(|w| w[0].ids != w[1].ids);
    let records = answers
        .into_iter()
        .map(|a| QueryRecord {
            index: i,
            kind: spec.query.kind(),
            engine: a.engine,
            answer_size: a.ids.len(),
            answer_digest: answer_digest(&a.ids),
            counters: a.counters,
            bound_counter: a.bound_counter.to_string(),
            bound_value: a.bound_value,
            bound: a.bound,
            within_bound: a.bound_value <= a.bound,
            verified: truth.as_ref().map(|t| *t == a.ids),
            expected_match: spec.expected.as_ref().map(|e| *e == a.ids),
            micros: a.micros,
        })
        .collect();
    Ok(Outcome {
        records,
        disagreement,
    })
}

/// Run every query on the built engines. Queries are split across worker
/// threads; records come back in query order regardless. The first failing
/// query, by index, aborts the run.
pub fn run_queries(index: &Index, queries: &[QuerySpec], opts: &RunOptions) -> Result<BenchReport> {
    let threads = match opts.threads {
        0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
        t => t,
    }
    .min(queries.len().max(1));
    let chunk = queries.len().div_ceil(threads).max(1);
    let outcomes: Vec<Result<Outcome>> = std::thread::scope(|scope| {
        let handles: Vec<_> = queries
            .chunks(chunk)
            .enumerate()
            .map(|(c, part)| {
                scope.spawn(move || {
                    part.iter()
                        .enumerate()
                        .map(|(k, spec)| run_one(index, c * chunk + k, spec, opts))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("query worker panicked"))
            .collect()
    });

    let mut records = Vec::new();
    let mut disagreements = 0;
    for o in outcomes {
        let o = o?;
        disagreements += o.disagreement as usize;
        records.extend(o.records);
    }
    let count = |f: &dyn Fn(&QueryRecord) -> bool| records.iter().filter(|r| f(r)).count();
    let summary = Summary {
        dataset: index.dataset.name.clone(),
        dataset_checksum: index.dataset.checksum.clone(),
        n: index.dataset.len(),
        engines: index.engine_names(),
        builds: index.builds.clone(),
        queries: queries.len(),
        records: records.len(),
        bound_violations: count(&|r| !r.within_bound),
        oracle_mismatches: count(&|r| r.verified == Some(false)),
        expected_mismatches: count(&|r| r.expected_match == Some(false)),
        engine_disagreements: disagreements,
        checksum: String::new(),
    };
    Ok(BenchReport::new(records, summary))
}
