use std::path::PathBuf;

use convexdraw::format::{emit_validated, Document};
use convexdraw::points::load_pts;
use convexdraw::svg::export_svg;
use convexdraw_core::canon::canonical_form;
use convexdraw_core::fixtures::{fixture, fixture_labels, FixtureId};
use convexdraw_core::hierarchy::{is_f_convex, is_h_convex};

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

#[test]
fn checked_in_fixtures_match_the_generators() {
    for id in FixtureId::all() {
        let path = fixture_dir().join(format!("{}.cdrw", id.name()));
        let on_disk = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let d = fixture(id);
        assert_eq!(on_disk, emit_validated(&d, fixture_labels(id)).unwrap(), "{id} differs from its generator");
        let doc = Document::parse(&on_disk).unwrap();
        let v = doc.validation.clone().expect("fixtures carry a validation block");
        assert_eq!(v.crossings, d.crossing_count());
        let loaded = doc.drawing().unwrap();
        assert_eq!(canonical_form(&loaded).unwrap(), canonical_form(&d).unwrap());
    }
}

#[test]
fn fixture_verdicts_on_disk() {
    let verdicts = |name: &str| {
        let doc = Document::parse(&std::fs::read_to_string(fixture_dir().join(name)).unwrap()).unwrap();
        let v = doc.validation.unwrap();
        (v.crossings, v.convex.unwrap(), v.h_convex.unwrap(), v.f_convex.unwrap())
    };
    assert_eq!(verdicts("tildeK5_3.cdrw"), (3, false, false, false));
    assert_eq!(verdicts("tildeK5_5.cdrw"), (5, false, false, false));
    assert_eq!(verdicts("K6_11.cdrw"), (11, true, false, false));
    assert_eq!(verdicts("TC8.cdrw"), (18, true, true, false));
    assert_eq!(verdicts("optimalK6.cdrw"), (3, true, true, true));
    assert_eq!(verdicts("naturalK9.cdrw"), (126, true, true, true));
}

#[test]
fn svg_export_round_trips_through_the_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    for id in FixtureId::all() {
        let d = fixture(id);
        let labels = fixture_labels(id);
        let path = dir.path().join(format!("{}.svg", id.name()));
        let side = export_svg(&d, labels.as_deref(), &path).unwrap();
        let svg = std::fs::read_to_string(&path).unwrap();
        assert!(svg.starts_with("<?xml"));
        assert_eq!(svg.matches("<polyline").count(), d.segment_count(), "{id}");
        assert_eq!(svg.matches("class=\"crossing\"").count(), d.crossing_count(), "{id}");
        let back = Document::parse(&std::fs::read_to_string(side).unwrap()).unwrap();
        assert_eq!(back.labels, labels);
        assert_eq!(canonical_form(&back.drawing().unwrap()).unwrap(), canonical_form(&d).unwrap(), "{id}");
    }
}

/// Four points are in convex position when none lies inside the triangle
/// of the other three.
fn convex_quadruple(p: [(i64, i64); 4]) -> bool {
    let orient = |a: (i64, i64), b: (i64, i64), c: (i64, i64)| ((b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)).signum();
    (0..4).all(|i| {
        let o: Vec<usize> = (0..4).filter(|&j| j != i).collect();
        let (a, b, c) = (p[o[0]], p[o[1]], p[o[2]]);
        let s = orient(a, b, c);
        !(orient(a, b, p[i]) == s && orient(b, c, p[i]) == s && orient(c, a, p[i]) == s)
    })
}

#[test]
fn point_files_give_rectilinear_drawings() {
    let convex = load_pts("0 0\n10 0\n13 8\n5 14\n-3 8\n").unwrap();
    assert_eq!(convex.crossing_count(), 5);
    assert!(is_f_convex(&convex).unwrap().f_convex);
    assert!(convex.faces().iter().any(|f| f.darts().len() == 5 && f.vertices().len() == 5));

    let pts = [(0, 0), (20, 0), (10, 20), (8, 6), (12, 7)];
    let text: String = pts.iter().map(|(x, y)| format!("{x} {y}\n")).collect();
    let d = load_pts(&text).unwrap();
    let mut expected = 0;
    for a in 0..5 {
        for b in a + 1..5 {
            for c in b + 1..5 {
                for e in c + 1..5 {
                    expected += convex_quadruple([pts[a], pts[b], pts[c], pts[e]]) as usize;
                }
            }
        }
    }
    assert_eq!(expected, 1);
    assert_eq!(d.crossing_count(), expected);
    let h = is_h_convex(&d).unwrap();
    assert!(h.h_convex && is_f_convex(&d).unwrap().f_convex);
}

mod round_trip {
    use convexdraw::format::Document;
    use convexdraw_core::canon::canonical_form;
    use convexdraw_core::fixtures::{natural, tin_can};
    use convexdraw_core::map::all_edges;
    use convexdraw_core::reroute::{reroute_along_path, Side};
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn emit_then_parse_keeps_the_canonical_form(base in 0usize..3, moves in proptest::collection::vec((0usize..21, 0usize..7, any::<bool>()), 0..4)) {
            let mut d = match base { 0 => natural(6), 1 => natural(7), _ => tin_can(3) };
            for (ei, w, left) in moves {
                let edges: Vec<_> = all_edges(d.n()).collect();
                let e = edges[ei % edges.len()];
                let w = w % d.n();
                if e.contains(w) {
                    continue;
                }
                if let Ok(next) = reroute_along_path(&d, e, w, if left { Side::Left } else { Side::Right }) {
                    d = next;
                }
            }
            let text = Document::from_drawing(&d, None).to_text();
            let back = Document::parse(&text).unwrap().drawing().unwrap();
            prop_assert_eq!(canonical_form(&back).unwrap(), canonical_form(&d).unwrap());
            prop_assert_eq!(Document::from_drawing(&back, None).to_text(), text);
        }
    }
}
