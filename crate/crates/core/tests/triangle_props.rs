use polyret::layers::LayerStructure;
use polyret::oracle::{scan_rect, scan_triangle};
use polyret::triangle::{dissect_rect, Diagonal};
use polyret::workload::{generate_points, Distribution, Workload};
use polyret::{
    AxisRect, Error, OrthoTriangle, PointSet, Quadrant, QueryLine, ThreeLayerTree, TriangleEngine,
    TwoLayerStructure,
};

fn ceil_log2(n: usize) -> u64 {
    n.next_power_of_two().trailing_zeros() as u64
}

#[test]
fn three_layer_matches_scan_on_all_distributions() {
    for d in Distribution::ALL {
        let s = generate_points(3000, 1, d);
        let t = ThreeLayerTree::build(&s).unwrap();
        let mut w = Workload::new(2);
        for _ in 0..400 {
            let q = w.triangle();
            assert_eq!(t.query_triangle(&q).0, scan_triangle(&s, &q));
            let r = w.rect();
            assert_eq!(t.query_rect(&r).0, scan_rect(&s, &r));
        }
    }
}

#[test]
fn two_layer_matches_scan_and_bound() {
    for d in Distribution::ALL {
        let s = generate_points(300, 3, d);
        let t = TwoLayerStructure::build(&s).unwrap();
        let l = ceil_log2(s.len());
        let mut w = Workload::new(4);
        for _ in 0..400 {
            let q = w.triangle();
            let (ids, stats) = t.query_triangle(&q);
            assert_eq!(ids, scan_triangle(&s, &q));
            let a = ids.len() as u64;
            assert!(stats.nodes_visited <= 8 * (l + (a + 1) * l));
            let r = w.rect();
            assert_eq!(t.query_rect(&r).0, scan_rect(&s, &r));
        }
    }
}

#[test]
fn engines_agree_on_fixed_shapes() {
    let s = generate_points(500, 5, Distribution::Uniform);
    let bb = s.bbox().unwrap();
    let t3 = ThreeLayerTree::build(&s).unwrap();
    let t2 = TwoLayerStructure::build(&s).unwrap();
    // Covers the bounding box.
    let span = (bb.x_hi - bb.x_lo) + (bb.y_hi - bb.y_lo) + 1;
    let all = OrthoTriangle::new(
        (bb.x_lo, bb.y_lo),
        Quadrant::NE,
        QueryLine::new(1, 1, -(bb.x_lo + bb.y_lo + span)).unwrap(),
    )
    .unwrap();
    // Corner past every x.
    let none = OrthoTriangle::new(
        (bb.x_hi + 1, bb.y_lo),
        Quadrant::NE,
        QueryLine::new(1, 1, -(bb.x_hi + bb.y_hi + 10)).unwrap(),
    )
    .unwrap();
    for q in [all, none] {
        let (a3, st3) = t3.query_triangle(&q);
        let (a2, _) = t2.query_triangle(&q);
        assert_eq!(a3, a2);
        assert_eq!(a3, scan_triangle(&s, &q));
        if q == none {
            assert!(a3.is_empty());
            assert_eq!(st3.substructures_queried, 0);
        } else {
            assert_eq!(a3, s.ids());
        }
    }
    let bbox = t2.query_rect(&bb).0;
    assert_eq!(bbox, s.ids());
    assert_eq!(t3.query_rect(&bb).0, bbox);
    let p = s.points()[17];
    let single = AxisRect::new(p.x, p.x, p.y, p.y).unwrap();
    for e in [&t3 as &dyn TriangleEngine, &t2] {
        assert_eq!(e.query_rect(&single).0, [p.id].into());
    }
}

#[test]
fn each_dissection_alone_matches_rect_scan() {
    let s = generate_points(200, 6, Distribution::GridMinusDiagonal);
    let t = TwoLayerStructure::build(&s).unwrap();
    let mut w = Workload::new(7);
    for _ in 0..300 {
        let r = w.rect();
        for d in [Diagonal::Main, Diagonal::Anti] {
            let got: polyret::IdSet = dissect_rect(&r, d)
                .iter()
                .flat_map(|q| t.query_triangle(q).0)
                .collect();
            assert_eq!(got, scan_rect(&s, &r), "{r:?} {d:?}");
        }
    }
}

#[test]
fn three_layer_x_cover_partitions() {
    let s = generate_points(777, 8, Distribution::Clustered);
    let t = ThreeLayerTree::build(&s).unwrap();
    let mut xs: Vec<i64> = s.points().iter().map(|p| p.x).collect();
    xs.sort_unstable();
    let mut w = Workload::new(9);
    for _ in 0..200 {
        let (lo, _) = w.point();
        for (a, b) in [(lo, i64::MAX), (i64::MIN, lo)] {
            let cover = t.x_cover(a, b);
            assert!(cover.len() as u64 <= ceil_log2(s.len()) + 1);
            let mut ranks: Vec<usize> = cover.iter().flat_map(|&(f, l)| f..=l).collect();
            ranks.sort_unstable();
            let want: Vec<usize> = (0..xs.len())
                .filter(|&i| a <= xs[i] && xs[i] <= b)
                .collect();
            assert_eq!(ranks, want);
        }
    }
}

#[test]
fn three_layer_space_bound() {
    for n in [2, 1024] {
        let s = generate_points(n, 10, Distribution::Uniform);
        let t = ThreeLayerTree::build(&s).unwrap();
        let l = ceil_log2(n) as usize;
        assert!(t.stored_multiplicity() <= n * (l + 1) * (l + 1));
        if n >= 8 {
            assert!(t.stored_multiplicity() <= n * l * l);
        }
    }
}

#[test]
fn two_layer_prefixes_equal_fresh_builds() {
    let s = generate_points(128, 11, Distribution::Uniform);
    let t = TwoLayerStructure::build(&s).unwrap();
    let mut checked = 0;
    for v in (1..t.node_count()).step_by(7) {
        let Some((_, sv)) = t.s_prefix(v, 1) else {
            continue;
        };
        for j in [1, sv.len() / 2, sv.len()] {
            let Some((ls, _)) = t.s_prefix(v, j) else {
                continue;
            };
            let fresh = LayerStructure::from_points(&sv[..j]).unwrap();
            assert_eq!(ls.layer_count(), fresh.layer_count());
            for i in 0..ls.layer_count() {
                assert_eq!(ls.layer(i), fresh.layer(i), "node {v} prefix {j} layer {i}");
            }
            checked += 1;
        }
    }
    assert!(checked > 20);
}

#[test]
fn two_layer_multiplicity_closed_form() {
    let s = PointSet::from_coords(&[(1, 1), (2, 2), (3, 3), (4, 4)]).unwrap();
    let t = TwoLayerStructure::build(&s).unwrap();
    let expect: usize = (1..t.node_count())
        .filter_map(|v| {
            t.s_prefix(v, 1)
                .map(|(_, sv)| sv.len() * (sv.len() + 1) / 2)
        })
        .sum();
    assert_eq!(t.s_prefix_multiplicity(), expect);
}

#[test]
fn two_layer_cap() {
    let s = generate_points(100, 12, Distribution::Uniform);
    assert_eq!(
        TwoLayerStructure::build_with_cap(&s, 64).unwrap_err(),
        Error::CapExceeded { n: 100, cap: 64 }
    );
}
