//! Named drawings and parametric families.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::convexity::K5Class;
use crate::geometry::{build_polyline, convex_points, parse_points, Point};
use crate::map::{Drawing, Edge, RawDrawing, RawEdge, RawNode, RawRotation};
use crate::reroute::{reroute_along_path, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FixtureId {
    TildeK5_3,
    TildeK5_5,
    K6_11,
    TC8,
    ModifiedTC8,
    NaturalK(usize),
    OptimalK6,
}

impl FixtureId {
    /// Every fixture with a fixed size, plus natural drawings for `4..=9`.
    pub fn all() -> Vec<FixtureId> {
        let mut v = vec![FixtureId::TildeK5_3, FixtureId::TildeK5_5, FixtureId::K6_11, FixtureId::TC8, FixtureId::ModifiedTC8, FixtureId::OptimalK6];
        v.extend((4..=9).map(FixtureId::NaturalK));
        v
    }

    pub fn name(self) -> String {
        match self {
            FixtureId::TildeK5_3 => "tildeK5_3".into(),
            FixtureId::TildeK5_5 => "tildeK5_5".into(),
            FixtureId::K6_11 => "K6_11".into(),
            FixtureId::TC8 => "TC8".into(),
            FixtureId::ModifiedTC8 => "modifiedTC8".into(),
            FixtureId::NaturalK(n) => format!("naturalK{n}"),
            FixtureId::OptimalK6 => "optimalK6".into(),
        }
    }

    pub fn parse(name: &str) -> Option<FixtureId> {
        let lower = name.to_ascii_lowercase();
        let id = match lower.as_str() {
            "tildek5_3" | "tilde-k5-3" => FixtureId::TildeK5_3,
            "tildek5_5" | "tilde-k5-5" => FixtureId::TildeK5_5,
            "k6_11" | "k6-11" => FixtureId::K6_11,
            "tc8" => FixtureId::TC8,
            "modifiedtc8" | "modified-tc8" => FixtureId::ModifiedTC8,
            "optimalk6" | "optimal-k6" => FixtureId::OptimalK6,
            other => {
                let n = other.strip_prefix("naturalk").or_else(|| other.strip_prefix("natural-k"))?;
                FixtureId::NaturalK(n.parse().ok()?)
            }
        };
        Some(id)
    }
}

impl fmt::Display for FixtureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Builds a fixture and checks its crossing count.
pub fn fixture(id: FixtureId) -> Drawing {
    let (d, expected) = match id {
        FixtureId::TildeK5_3 => (tilde_k5_3(), 3),
        FixtureId::TildeK5_5 => (tilde_k5_5(), 5),
        FixtureId::K6_11 => (k6_11(), 11),
        FixtureId::TC8 => (tc8(), 18),
        FixtureId::ModifiedTC8 => (modified_tc8(), 24),
        FixtureId::NaturalK(n) => (natural(n), binomial(n, 4)),
        FixtureId::OptimalK6 => (optimal_k6(), 3),
    };
    assert_eq!(d.crossing_count(), expected, "fixture {id} has the wrong crossing count");
    d
}

/// Vertex names used in figures, when the fixture has them.
pub fn fixture_labels(id: FixtureId) -> Option<Vec<String>> {
    let names: &[&str] = match id {
        FixtureId::TildeK5_3 | FixtureId::TildeK5_5 => &["s", "t", "u", "v", "w"],
        FixtureId::TC8 | FixtureId::ModifiedTC8 => &TC8_LABELS,
        _ => return None,
    };
    Some(names.iter().map(|s| String::from(*s)).collect())
}

/// Inner vertices `0..4` are the digits; outer vertices `4..8` are the
/// colour letters.
pub const TC8_LABELS: [&str; 8] = ["0", "1", "2", "3", "B", "P", "G", "R"];

/// Resolves a vertex given by label or index.
pub fn resolve_vertex(labels: Option<&[String]>, token: &str) -> Option<usize> {
    if let Some(l) = labels {
        if let Some(i) = l.iter().position(|x| x == token) {
            return Some(i);
        }
    }
    token.parse().ok()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn pts(v: &[(i64, i64)]) -> Vec<Point> {
    v.iter().map(|&(x, y)| Point::int(x, y)).collect()
}

fn polyline(points: &[(i64, i64)], bends: &[((usize, usize), &[(i64, i64)])]) -> Drawing {
    let mut map = BTreeMap::new();
    for &((a, b), path) in bends {
        let mut p = pts(path);
        if a > b {
            p.reverse();
        }
        map.insert(Edge::new(a, b), p);
    }
    build_polyline(&pts(points), &map).expect("fixture curves are in general position")
}

/// The natural drawing of `K_n`: points in convex position.
pub fn natural(n: usize) -> Drawing {
    parse_points(convex_points(n)).expect("convex points draw a natural K_n")
}

/// Non-convex `K_5` with three crossings. Vertices `s t u v w` are
/// `0..5`; `st` is crossed by `wu` and `wv`, and `su` crosses `tv`.
pub fn tilde_k5_3() -> Drawing {
    polyline(
        &[(0, 0), (10, 0), (10, 10), (0, 10), (5, 2)],
        &[
            ((4, 2), &[(6, -3), (14, -3), (14, 12)]),
            ((4, 3), &[(4, -3), (-4, -3), (-4, 12)]),
        ],
    )
}

/// Non-convex `K_5` with five crossings. With `s t u v w` as `0..5`, `tv`
/// crosses all three edges of the triangle `suw`; the other crossings are
/// `su x tw` and `uw x sv`. Swapping `s` with `w` and `t` with `v` is a
/// symmetry.
pub fn tilde_k5_5() -> Drawing {
    // Drawn as triangle u s w with t inside and v outside, then renamed.
    polyline(
        &[(0, 0), (12, 0), (6, 12), (6, 3), (-3, 9)],
        &[
            ((3, 4), &[(9, -2), (15, -2), (15, 5), (7, 9), (3, 9)]),
            ((3, 2), &[(3, -2), (-5, -2), (-5, 14)]),
            ((4, 1), &[(4, 5), (8, 4)]),
        ],
    )
    .relabel(&[2, 0, 4, 1, 3])
}

/// The unique drawing of `K_6` with three crossings.
pub fn optimal_k6() -> Drawing {
    parse_points(pts(&[(0, 0), (30, 0), (15, 26), (15, 16), (18, 8), (12, 8)])).expect("general position")
}

/// Reference drawings of the five `K_5` types.
pub fn reference_k5(c: K5Class) -> Drawing {
    match c {
        K5Class::OneCrossing => parse_points(pts(&[(0, 0), (12, 0), (6, 12), (5, 3), (7, 4)])).expect("general position"),
        K5Class::ConvexThree => parse_points(pts(&[(0, 0), (10, 0), (10, 10), (0, 10), (3, 4)])).expect("general position"),
        K5Class::Natural => natural(5),
        K5Class::TildeK5_3 => tilde_k5_3(),
        K5Class::TildeK5_5 => tilde_k5_5(),
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Signed angular sweep of the annulus edge from inner vertex `i` to outer
/// vertex `j`: the shorter way round, clockwise on a tie.
fn sweep(k: usize, i: usize, j: usize) -> i64 {
    let d = ((j + k - i) % k) as i64;
    let k = k as i64;
    if 2 * d < k {
        d
    } else if 2 * d > k {
        d - k
    } else {
        -k / 2
    }
}

/// The cylindrical drawing of `K_{2k}`. Inner vertices `0..k` sit
/// counterclockwise on a circle with their `K_k` inside it; outer vertices
/// `k..2k` sit on a larger concentric circle, at the same angles, with their
/// `K_k` outside. Each inner-outer edge spirals monotonically across the
/// annulus along the shorter angular route.
pub fn tin_can(k: usize) -> Drawing {
    assert!(k >= 3, "tin can drawings need k >= 3");
    let inner = natural(k).to_raw();
    let n = 2 * k;
    let inner_crossings = inner.rotations.len() - k;

    let mut edges: Vec<RawEdge> = Vec::new();
    let mut rotations: Vec<RawRotation> = Vec::new();
    for e in &inner.edges {
        edges.push(e.clone());
        edges.push(RawEdge {
            ends: [e.ends[0] + k, e.ends[1] + k],
            crossings: e.crossings.iter().map(|c| c + inner_crossings).collect(),
        });
    }
    for r in &inner.rotations {
        if let RawNode::Crossing(c) = r.node {
            rotations.push(r.clone());
            let mut toward: Vec<usize> = r.toward.iter().map(|w| w + k).collect();
            toward.reverse();
            rotations.push(RawRotation { node: RawNode::Crossing(c + inner_crossings), toward });
        }
    }

    // Perturbed angles (in units of a k-th of a turn) keep crossings apart.
    let eps = rat(1, 1000 * (k * k) as i64);
    let kk = BigRational::from_integer(BigInt::from(k));
    let alpha: Vec<BigRational> = (0..k as i64).map(|i| rat(i, 1) + &eps * rat((i * i) % 5 + i, 3)).collect();
    let beta: Vec<BigRational> = (0..k as i64).map(|j| rat(j, 1) + &eps * rat(j * j + 1, 1)).collect();
    struct Spiral {
        i: usize,
        j: usize,
        delta: i64,
        total: BigRational,
    }
    let mut spirals = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let delta = sweep(k, i, j);
            let mut total = &beta[j] - &alpha[i];
            let target = rat(delta, 1);
            while &total - &target > rat(1, 2) {
                total -= &kk;
            }
            while &target - &total > rat(1, 2) {
                total += &kk;
            }
            spirals.push(Spiral { i, j, delta, total });
        }
    }
    let mut next_id = 2 * inner_crossings;
    let mut along: Vec<Vec<(BigRational, usize)>> = (0..spirals.len()).map(|_| Vec::new()).collect();
    for a in 0..spirals.len() {
        for b in a + 1..spirals.len() {
            let (p, q) = (&spirals[a], &spirals[b]);
            if p.i == q.i || p.j == q.j || p.total == q.total {
                continue;
            }
            let denom = &p.total - &q.total;
            let base = &alpha[q.i] - &alpha[p.i];
            let hits: Vec<BigRational> = (-3..=3)
                .map(|m| (&base + &kk * rat(m, 1)) / &denom)
                .filter(|t| *t > BigRational::zero() && *t < BigRational::one())
                .collect();
            assert!(hits.len() <= 1, "two annulus edges meet at most once");
            if let Some(t) = hits.into_iter().next() {
                let id = next_id;
                next_id += 1;
                along[a].push((t.clone(), id));
                along[b].push((t, id));
                let (lo, hi) = if p.total < q.total { (p, q) } else { (q, p) };
                rotations.push(RawRotation { node: RawNode::Crossing(id), toward: vec![lo.j + k, hi.j + k, lo.i, hi.i] });
            }
        }
    }
    for (s, mut list) in spirals.iter().zip(along) {
        list.sort();
        for w in list.windows(2) {
            assert!(w[0].0 != w[1].0, "annulus crossings must be distinct points");
        }
        edges.push(RawEdge { ends: [s.i, s.j + k], crossings: list.into_iter().map(|x| x.1).collect() });
    }

    let by_sweep = |v: usize, inner_end: bool| -> Vec<usize> {
        let mut l: Vec<&Spiral> = spirals.iter().filter(|s| if inner_end { s.i == v } else { s.j == v }).collect();
        l.sort_by_key(|s| s.delta);
        l.iter().map(|s| if inner_end { s.j + k } else { s.i }).collect()
    };
    for i in 0..k {
        let mut toward: Vec<usize> = (1..k).map(|m| (i + m) % k).collect();
        toward.extend(by_sweep(i, true));
        rotations.push(RawRotation { node: RawNode::Vertex(i), toward });
    }
    for j in 0..k {
        let mut toward: Vec<usize> = (1..k).map(|m| (j + k - m) % k + k).collect();
        toward.extend(by_sweep(j, false));
        rotations.push(RawRotation { node: RawNode::Vertex(j + k), toward });
    }
    Drawing::from_raw(&RawDrawing { n, edges, rotations }).expect("tin can drawings are good")
}

/// Builds a drawing from per-edge crossing sequences (listed from the lower
/// end) and rotations of vertices, then of crossings `0..`.
fn table(n: usize, crossings: &[&[usize]], vertices: &[&[usize]], at_crossings: &[[usize; 4]]) -> Drawing {
    let edges = crate::map::all_edges(n).zip(crossings).map(|(e, c)| RawEdge { ends: e.ends(), crossings: c.to_vec() }).collect();
    let mut rotations: Vec<RawRotation> = vertices.iter().enumerate().map(|(v, r)| RawRotation { node: RawNode::Vertex(v), toward: r.to_vec() }).collect();
    rotations.extend(at_crossings.iter().enumerate().map(|(c, r)| RawRotation { node: RawNode::Crossing(c), toward: r.to_vec() }));
    Drawing::from_raw(&RawDrawing { n, edges, rotations }).expect("table fixtures are good drawings")
}

/// The convex `K_6` that is not h-convex, with eleven crossings.
pub fn k6_11() -> Drawing {
    table(
        6,
        &[&[], &[0, 1, 2], &[3, 4, 5], &[6, 7], &[], &[], &[2, 8], &[1, 4, 9], &[0, 3, 6], &[], &[8, 5, 10], &[], &[], &[10, 9, 7], &[]],
        &[&[1, 2, 3, 4, 5], &[2, 3, 4, 5, 0], &[5, 3, 4, 0, 1], &[2, 4, 5, 0, 1], &[2, 3, 5, 0, 1], &[3, 4, 2, 0, 1]],
        &[
            [2, 5, 0, 1],
            [2, 4, 0, 1],
            [2, 3, 0, 1],
            [3, 5, 0, 1],
            [3, 4, 0, 1],
            [3, 4, 0, 2],
            [4, 5, 0, 1],
            [5, 0, 3, 4],
            [3, 4, 1, 2],
            [5, 1, 3, 4],
            [5, 2, 3, 4],
        ],
    )
}

/// The tin can drawing of `K_8` named as in [`TC8_LABELS`]: the inner
/// `K_4` is `0 1 2 3` and the outer one `R G P B`, read at the same angles.
pub fn tc8() -> Drawing {
    tin_can(4).relabel(&[0, 1, 2, 3, 7, 6, 5, 4])
}

/// `TC8` with `13` rerouted around `2` and `BG` around `P`, which makes
/// `{1, 2, 3, B, R}` and `{0, 1, B, P, G}` non-convex.
pub fn modified_tc8() -> Drawing {
    let d = reroute_along_path(&tc8(), Edge::new(1, 3), 2, Side::Right).expect("13 reroutes around 2");
    reroute_along_path(&d, Edge::new(4, 6), 5, Side::Right).expect("BG reroutes around P")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexity::classify_k5_structural;
    use crate::map::Edge as E;

    #[test]
    fn tilde_k5_3_crossing_pattern() {
        let d = tilde_k5_3();
        let (s, t, u, v, w) = (0, 1, 2, 3, 4);
        let mut want = vec![(E::new(s, t), E::new(u, w)), (E::new(s, t), E::new(v, w)), (E::new(s, u), E::new(t, v))];
        want.sort();
        assert_eq!(d.crossing_pairs(), want);
    }

    #[test]
    fn tilde_k5_5_has_a_triple_crossed_triangle() {
        let d = tilde_k5_5();
        let pairs = [(E::new(0, 2), E::new(1, 3)), (E::new(0, 2), E::new(1, 4)), (E::new(0, 3), E::new(2, 4)), (E::new(0, 4), E::new(1, 3)), (E::new(1, 3), E::new(2, 4))];
        assert_eq!(d.crossing_pairs(), pairs);
        assert_eq!(classify_k5_structural(&d).unwrap(), K5Class::TildeK5_5);
    }

    #[test]
    fn references_classify_as_themselves() {
        for c in K5Class::ALL {
            assert_eq!(classify_k5_structural(&reference_k5(c)).unwrap(), c);
        }
    }

    #[test]
    fn tin_can_counts() {
        assert_eq!(tin_can(3).crossing_count(), 3);
        assert_eq!(tin_can(4).crossing_count(), 18);
        for k in 5..=6 {
            // Harary-Hill value for 2k vertices.
            let n = 2 * k;
            let h = (n / 2) * ((n - 1) / 2) * ((n - 2) / 2) * ((n - 3) / 2) / 4;
            assert_eq!(tin_can(k).crossing_count(), h);
        }
    }

    #[test]
    fn natural_family() {
        for n in 4..=9 {
            assert_eq!(natural(n).crossing_count(), binomial(n, 4));
        }
    }

    #[test]
    fn optimal_k6_is_the_small_tin_can() {
        assert!(crate::canon::is_isomorphic(&optimal_k6(), &tin_can(3)).unwrap());
    }
}
