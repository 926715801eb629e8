use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use polyret::layers::LayerStructure;
use polyret::oracle::scan_triangle;
use polyret::ppst::PersistentPst;
use polyret::pst::PrioritySearchTree;
use polyret::{decompose, query_polygon, ThreeLayerTree, TriangleEngine, TwoLayerStructure};
use polyret_bench::Fixture;

const SIZES: [usize; 3] = [1 << 10, 1 << 12, 1 << 14];
const TWO_LAYER_SIZES: [usize; 2] = [256, 1024];
const QUERIES: usize = 64;

fn build(c: &mut Criterion) {
    let mut g = c.benchmark_group("build");
    g.sample_size(10);
    for n in SIZES {
        let f = Fixture::new(n, 0);
        g.throughput(Throughput::Elements(n as u64));
        g.bench_with_input(BenchmarkId::new("layers", n), &f.points, |b, s| {
            b.iter(|| LayerStructure::build(s).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("pst", n), &f.points, |b, s| {
            b.iter(|| PrioritySearchTree::build(s).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("ppst", n), &f.points, |b, s| {
            b.iter(|| PersistentPst::build(s).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("3layer", n), &f.points, |b, s| {
            b.iter(|| ThreeLayerTree::build(s).unwrap())
        });
    }
    for n in TWO_LAYER_SIZES {
        let f = Fixture::new(n, 0);
        g.bench_with_input(BenchmarkId::new("2layer", n), &f.points, |b, s| {
            b.iter(|| TwoLayerStructure::build(s).unwrap())
        });
    }
    g.finish();
}

fn quadrant_and_halfplane(c: &mut Criterion) {
    let mut g = c.benchmark_group("query");
    for n in SIZES {
        let f = Fixture::new(n, QUERIES);
        let layers = LayerStructure::build(&f.points).unwrap();
        let pst = PrioritySearchTree::build(&f.points).unwrap();
        let ppst = PersistentPst::build(&f.points).unwrap();
        g.throughput(Throughput::Elements(QUERIES as u64));
        g.bench_function(BenchmarkId::new("halfplane/layers", n), |b| {
            b.iter(|| {
                let mut out = Vec::new();
                let mut st = Default::default();
                for h in &f.halfplanes {
                    layers.report_into(h, &mut out, &mut st);
                }
                out.len()
            })
        });
        g.bench_function(BenchmarkId::new("quadrant/pst", n), |b| {
            b.iter(|| {
                let mut out = Vec::new();
                for &(x, y) in &f.quadrants {
                    pst.query_into(x, y, &mut out);
                }
                out.len()
            })
        });
        g.bench_function(BenchmarkId::new("quadrant/ppst", n), |b| {
            b.iter(|| {
                let mut out = Vec::new();
                for &(x, y) in &f.quadrants {
                    ppst.query_into(x, y, &mut out);
                }
                out.len()
            })
        });
    }
    g.finish();
}

fn triangle_engines(c: &mut Criterion) {
    let mut g = c.benchmark_group("query");
    let mut engines: Vec<(usize, Box<dyn TriangleEngine>, Fixture)> = Vec::new();
    for n in SIZES {
        let f = Fixture::new(n, QUERIES);
        engines.push((n, Box::new(ThreeLayerTree::build(&f.points).unwrap()), f));
    }
    for n in TWO_LAYER_SIZES {
        let f = Fixture::new(n, QUERIES);
        engines.push((n, Box::new(TwoLayerStructure::build(&f.points).unwrap()), f));
    }
    for (n, e, f) in &engines {
        let decomps: Vec<_> = f.polygons.iter().map(|p| decompose(p).unwrap()).collect();
        g.throughput(Throughput::Elements(QUERIES as u64));
        g.bench_function(BenchmarkId::new(format!("triangle/{}", e.name()), n), |b| {
            b.iter(|| {
                let mut out = Vec::new();
                let mut st = Default::default();
                for t in &f.triangles {
                    e.triangle_into(t, &mut out, &mut st);
                }
                out.len()
            })
        });
        g.bench_function(BenchmarkId::new(format!("rect/{}", e.name()), n), |b| {
            b.iter(|| {
                let mut out = Vec::new();
                let mut st = Default::default();
                for r in &f.rects {
                    e.rect_into(r, &mut out, &mut st);
                }
                out.len()
            })
        });
        g.bench_function(BenchmarkId::new(format!("polygon/{}", e.name()), n), |b| {
            b.iter(|| {
                decomps
                    .iter()
                    .map(|d| query_polygon(e.as_ref(), d).0.len())
                    .sum::<usize>()
            })
        });
    }
    g.finish();
}

/// The linear scan the engines are measured against.
fn scan_baseline(c: &mut Criterion) {
    let mut g = c.benchmark_group("query");
    for n in SIZES {
        let f = Fixture::new(n, QUERIES);
        g.throughput(Throughput::Elements(QUERIES as u64));
        g.bench_function(BenchmarkId::new("triangle/scan", n), |b| {
            b.iter(|| {
                f.triangles
                    .iter()
                    .map(|t| scan_triangle(&f.points, t).len())
                    .sum::<usize>()
            })
        });
    }
    g.finish();
}

criterion_group!(
    benches,
    build,
    quadrant_and_halfplane,
    triangle_engines,
    scan_baseline
);
criterion_main!(benches);
