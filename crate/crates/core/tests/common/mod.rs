//! Seeded test corpus shared by the integration tests.
#![allow(dead_code)]

use convexdraw_core::fixtures::{fixture, natural, FixtureId};
use convexdraw_core::geometry::{parse_points, Point};
use convexdraw_core::map::all_edges;
use convexdraw_core::reroute::{reroute_along_path, Side};
use convexdraw_core::{Drawing, Edge};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Instance {
    pub name: String,
    pub drawing: Drawing,
    /// Integer coordinates, for rectilinear instances.
    pub points: Option<Vec<(i64, i64)>>,
}

fn orient(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i64 {
    ((b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)).signum()
}

/// `n` integer points in general position.
pub fn general_position(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Vec<(i64, i64)> {
    let mut pts: Vec<(i64, i64)> = Vec::new();
    while pts.len() < n {
        let p = (rng.gen_range(0..range), rng.gen_range(0..range));
        let bad = pts.contains(&p) || (0..pts.len()).any(|i| (i + 1..pts.len()).any(|j| orient(pts[i], pts[j], p) == 0));
        if !bad {
            pts.push(p);
        }
    }
    pts
}

pub fn rectilinear(pts: &[(i64, i64)]) -> Drawing {
    parse_points(pts.iter().map(|&(x, y)| Point::int(x, y)).collect()).expect("general position")
}

/// Properly crossing segment pairs, by integer orientation tests.
pub fn brute_crossings(pts: &[(i64, i64)]) -> Vec<(Edge, Edge)> {
    let edges: Vec<Edge> = all_edges(pts.len()).collect();
    let mut out = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if e.is_adjacent(f) {
                continue;
            }
            let (a, b, c, d) = (pts[e.lo()], pts[e.hi()], pts[f.lo()], pts[f.hi()]);
            if orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0 {
                out.push((e, f));
            }
        }
    }
    out
}

pub fn random_rectilinear(count: usize, seed: u64, n_range: std::ops::RangeInclusive<usize>) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(n_range.clone());
            let pts = general_position(&mut rng, n, 100);
            Instance { name: format!("rectilinear #{i} (n = {n})"), drawing: rectilinear(&pts), points: Some(pts) }
        })
        .collect()
}

/// Applies `steps` random successful reroutes to `d`.
pub fn mutate(d: &Drawing, rng: &mut ChaCha8Rng, steps: usize) -> Drawing {
    let n = d.n();
    let edges: Vec<Edge> = all_edges(n).collect();
    let mut cur = d.clone();
    let mut done = 0;
    for _ in 0..200 {
        if done == steps {
            break;
        }
        let e = *edges.choose(rng).unwrap();
        let w = loop {
            let w = rng.gen_range(0..n);
            if !e.contains(w) {
                break w;
            }
        };
        let side = if rng.gen_bool(0.5) { Side::Left } else { Side::Right };
        if let Ok(next) = reroute_along_path(&cur, e, w, side) {
            cur = next;
            done += 1;
        }
    }
    cur
}

pub fn mutated(count: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = if i % 2 == 0 { 6 } else { 7 };
            let steps = rng.gen_range(1..=3);
            Instance { name: format!("mutated #{i} (natural K{n}, {steps} reroutes)"), drawing: mutate(&natural(n), &mut rng, steps), points: None }
        })
        .collect()
}

pub fn fixtures() -> Vec<Instance> {
    FixtureId::all().into_iter().map(|id| Instance { name: id.name(), drawing: fixture(id), points: None }).collect()
}

pub const RECTILINEAR_SEED: u64 = 20_240_601;
pub const MUTATION_SEED: u64 = 7_001;

/// Fixtures, 200 rectilinear drawings with `n <= 8` and 50 reroutes of
/// natural `K_6` and `K_7`.
pub fn corpus() -> Vec<Instance> {
    let mut v = fixtures();
    v.extend(random_rectilinear(200, RECTILINEAR_SEED, 4..=8));
    v.extend(mutated(50, MUTATION_SEED));
    v
}
