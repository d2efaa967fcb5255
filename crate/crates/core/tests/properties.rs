mod common;

use std::collections::BTreeSet;

use common::{general_position, mutate, rectilinear};
use convexdraw_core::canon::canonical_form;
use convexdraw_core::convexity::is_convex_fpp;
use convexdraw_core::fixtures::{k6_11, natural, tin_can};
use convexdraw_core::hierarchy::{is_f_convex, is_h_convex, level, FConvexVerdict, Level};
use convexdraw_core::map::counting_identity_check;
use convexdraw_core::structure::structure_decomposition;
use convexdraw_core::{Drawing, Edge};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn base(i: usize) -> Drawing {
    match i {
        0 => natural(5),
        1 => natural(6),
        2 => natural(7),
        3 => tin_can(3),
        _ => k6_11(),
    }
}

fn drawing(base_id: usize, seed: u64, steps: usize) -> Drawing {
    mutate(&base(base_id), &mut ChaCha8Rng::seed_from_u64(seed), steps)
}

fn subset_from_mask(n: usize, mask: u32) -> Vec<usize> {
    (0..n).filter(|&v| mask & (1 << v) != 0).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn rerouted_drawings_stay_valid(b in 0usize..5, seed in any::<u64>(), steps in 0usize..4) {
        let d = drawing(b, seed, steps);
        let again = Drawing::from_raw(&d.to_raw()).unwrap();
        prop_assert_eq!(d.node_count() + d.face_count(), d.segment_count() + 2);
        prop_assert_eq!(again.crossing_count(), d.crossing_count());
        for (e, f) in d.crossing_pairs() {
            prop_assert!(!e.is_adjacent(f));
        }
        let c = counting_identity_check(&d).unwrap();
        prop_assert_eq!(c.left, c.right);
    }

    #[test]
    fn induce_restricts_crossings_and_composes(b in 0usize..5, seed in any::<u64>(), steps in 0usize..3, m1 in any::<u32>(), m2 in any::<u32>()) {
        let d = drawing(b, seed, steps);
        let n = d.n();
        let mut s = subset_from_mask(n, m1);
        if s.len() < 3 {
            s = (0..n).collect();
        }
        let sub = d.induce(&s).unwrap();
        let want: BTreeSet<(Edge, Edge)> = d
            .crossing_pairs()
            .into_iter()
            .filter(|(e, f)| [e.lo(), e.hi(), f.lo(), f.hi()].iter().all(|v| s.contains(v)))
            .map(|(e, f)| {
                let at = |v: usize| s.iter().position(|&x| x == v).unwrap();
                let (e, f) = (Edge::new(at(e.lo()), at(e.hi())), Edge::new(at(f.lo()), at(f.hi())));
                (e.min(f), e.max(f))
            })
            .collect();
        let got: BTreeSet<(Edge, Edge)> = sub.crossing_pairs().into_iter().map(|(e, f)| (e.min(f), e.max(f))).collect();
        prop_assert_eq!(got, want);

        let mut inner = subset_from_mask(s.len(), m2);
        if inner.len() < 3 {
            inner = (0..3).collect();
        }
        let direct: Vec<usize> = inner.iter().map(|&i| s[i]).collect();
        let twice = sub.induce(&inner).unwrap();
        let once = d.induce(&direct).unwrap();
        prop_assert_eq!(canonical_form(&twice).unwrap(), canonical_form(&once).unwrap());
    }

    #[test]
    fn canonical_form_ignores_labels_and_mirroring(b in 0usize..5, seed in any::<u64>(), steps in 0usize..3, perm_seed in any::<u64>(), mirror in any::<bool>()) {
        use rand::seq::SliceRandom;
        let d = drawing(b, seed, steps);
        let mut perm: Vec<usize> = (0..d.n()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(perm_seed));
        let mut e = d.relabel(&perm);
        if mirror {
            e = e.reflect();
        }
        prop_assert_eq!(canonical_form(&d).unwrap(), canonical_form(&e).unwrap());
    }

    #[test]
    fn hierarchy_levels_are_ordered(b in 0usize..5, seed in any::<u64>(), steps in 0usize..4) {
        let d = drawing(b, seed, steps);
        let convex = is_convex_fpp(&d);
        let h = is_h_convex(&d).unwrap();
        let f = if convex { is_f_convex(&d).unwrap() } else { FConvexVerdict { f_convex: false, unpainted: Vec::new() } };
        let l = level(convex, &h, &f).unwrap();
        prop_assert_eq!(l >= Level::Convex, convex);
        prop_assert_eq!(l >= Level::HConvex, h.h_convex);
        prop_assert_eq!(l == Level::FConvex, f.f_convex);
    }

    #[test]
    fn rectilinear_drawings_are_f_convex(seed in any::<u64>(), n in 4usize..8) {
        let pts = general_position(&mut ChaCha8Rng::seed_from_u64(seed), n, 60);
        let d = rectilinear(&pts);
        prop_assert!(is_convex_fpp(&d));
        prop_assert!(is_f_convex(&d).unwrap().f_convex);
    }
}

/// A convex drawing whose natural core has every other vertex inside is
/// f-convex as soon as it is h-convex.
fn inside_only_lemma(d: &Drawing) -> Option<bool> {
    if d.n() < 5 || !is_convex_fpp(d) {
        return None;
    }
    let dec = structure_decomposition(d).unwrap();
    if !dec.outside.is_empty() || !is_h_convex(d).unwrap().h_convex {
        return None;
    }
    Some(is_f_convex(d).unwrap().f_convex)
}

#[test]
fn natural_core_with_inside_vertices_only() {
    let mut met = 0;
    for seed in 0..150u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 5 + (seed % 4) as usize;
        let d = rectilinear(&general_position(&mut rng, n, 80));
        let m = mutate(&natural(5 + (seed % 3) as usize), &mut rng, 1 + (seed % 3) as usize);
        for x in [d, m] {
            if let Some(f) = inside_only_lemma(&x) {
                assert!(f, "seed {seed}: h-convex with all vertices inside the core, yet not f-convex");
                met += 1;
            }
        }
    }
    for n in 5..=8 {
        assert_eq!(inside_only_lemma(&natural(n)), Some(true));
    }
    assert!(met >= 20, "the lemma was exercised only {met} times");
}
