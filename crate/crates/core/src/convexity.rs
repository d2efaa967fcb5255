//! Triangle sides, the four point property, convexity and the two
//! forbidden drawings of `K_5`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::ConvexityError;
use crate::fixtures;
use crate::map::{Drawing, Edge, Node};
use crate::regions::{edge_mask, face_components, node_in, FaceSet};

/// One closed side of a 3-cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleSide {
    pub triangle: [usize; 3],
    pub faces: FaceSet,
    /// Vertices off the triangle drawn in this side, ascending.
    pub inside: Vec<usize>,
}

impl TriangleSide {
    pub fn edges(&self) -> [Edge; 3] {
        triangle_edges(self.triangle)
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.triangle.contains(&v) || self.inside.binary_search(&v).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.inside.is_empty()
    }
}

pub fn triangle_edges(t: [usize; 3]) -> [Edge; 3] {
    [Edge::new(t[0], t[1]), Edge::new(t[1], t[2]), Edge::new(t[0], t[2])]
}

/// All 3-subsets of `0..n` in lexicographic order.
pub fn triangles(n: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..n).flat_map(move |a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c])))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// The two sides of `t`. The first is the side to the right of the
/// triangle traversed `t[0] -> t[1] -> t[2]` (with `t` sorted).
pub fn sides_of_triangle(d: &Drawing, t: [usize; 3]) -> (TriangleSide, TriangleSide) {
    let mut t = t;
    t.sort_unstable();
    let edges = triangle_edges(t);
    let comps = face_components(d, &edge_mask(d, &edges));
    assert_eq!(comps.len(), 2, "a 3-cycle of a good drawing is a simple closed curve");
    let right = d.dart_face(d.vertex_dart(t[0], t[1]));
    let (a, b) = if comps[0].contains(right) { (&comps[0], &comps[1]) } else { (&comps[1], &comps[0]) };
    let mut ins = [Vec::new(), Vec::new()];
    for v in (0..d.n()).filter(|v| !t.contains(v)) {
        let in_a = node_in(d, a, Node::Vertex(v));
        let in_b = node_in(d, b, Node::Vertex(v));
        assert!(in_a != in_b, "vertex {v} must lie on exactly one side of {t:?}");
        ins[if in_a { 0 } else { 1 }].push(v);
    }
    let [ia, ib] = ins;
    (
        TriangleSide { triangle: t, faces: a.clone(), inside: ia },
        TriangleSide { triangle: t, faces: b.clone(), inside: ib },
    )
}

/// Every vertex inside the side forms a non-crossing `K_4` with the
/// triangle.
pub fn four_point_property(d: &Drawing, s: &TriangleSide) -> bool {
    let [a, b, c] = s.triangle;
    s.inside.iter().all(|&v| !d.is_crossing_k4([a, b, c, v]))
}

/// Every edge between two vertices of the closed side stays off the
/// triangle's edges.
pub fn convex_side(d: &Drawing, s: &TriangleSide) -> bool {
    let mut closed: Vec<usize> = s.triangle.to_vec();
    closed.extend(&s.inside);
    let tri = s.edges();
    for (i, &x) in closed.iter().enumerate() {
        for &y in &closed[i + 1..] {
            let e = Edge::new(x, y);
            if tri.iter().any(|&f| !f.is_adjacent(e) && d.cross(e, f)) {
                return false;
            }
        }
    }
    true
}

/// A 3-cycle neither of whose sides has the four point property, with a
/// vertex on each side forming a crossing `K_4` with it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadTriangle {
    pub triangle: [usize; 3],
    pub witnesses: [usize; 2],
}

/// Convexity decided from the four point property alone.
pub fn bad_triangle(d: &Drawing) -> Option<BadTriangle> {
    for t in triangles(d.n()) {
        let (a, b) = sides_of_triangle(d, t);
        let bad = |s: &TriangleSide| s.inside.iter().copied().find(|&v| d.is_crossing_k4([t[0], t[1], t[2], v]));
        if let (Some(x), Some(y)) = (bad(&a), bad(&b)) {
            return Some(BadTriangle { triangle: t, witnesses: [x, y] });
        }
    }
    None
}

pub fn is_convex_fpp(d: &Drawing) -> bool {
    bad_triangle(d).is_none()
}

/// The five drawings of `K_5` up to homeomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum K5Class {
    OneCrossing,
    ConvexThree,
    Natural,
    TildeK5_3,
    TildeK5_5,
}

impl K5Class {
    pub const ALL: [K5Class; 5] = [K5Class::OneCrossing, K5Class::ConvexThree, K5Class::Natural, K5Class::TildeK5_3, K5Class::TildeK5_5];

    pub fn is_convex(self) -> bool {
        !matches!(self, K5Class::TildeK5_3 | K5Class::TildeK5_5)
    }

    pub fn name(self) -> &'static str {
        match self {
            K5Class::OneCrossing => "one-crossing",
            K5Class::ConvexThree => "convex-three",
            K5Class::Natural => "natural",
            K5Class::TildeK5_3 => "tilde-K5-3",
            K5Class::TildeK5_5 => "tilde-K5-5",
        }
    }
}

impl fmt::Display for K5Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Some edge crosses all three edges of some 3-cycle.
pub fn triple_crossed_triangle(d: &Drawing) -> Option<(Edge, [usize; 3])> {
    for t in triangles(d.n()) {
        let te = triangle_edges(t);
        for e in crate::map::all_edges(d.n()) {
            if te.iter().all(|&f| d.cross(e, f)) {
                return Some((e, t));
            }
        }
    }
    None
}

/// Classifies a whole drawing of `K_5` from crossing counts alone.
pub fn classify_k5_structural(k5: &Drawing) -> Result<K5Class, ConvexityError> {
    if k5.n() != 5 {
        return Err(ConvexityError::SubsetSize(k5.n()));
    }
    match k5.crossing_count() {
        1 => Ok(K5Class::OneCrossing),
        3 if is_convex_fpp(k5) => Ok(K5Class::ConvexThree),
        3 => Ok(K5Class::TildeK5_3),
        5 if triple_crossed_triangle(k5).is_some() => Ok(K5Class::TildeK5_5),
        5 => Ok(K5Class::Natural),
        c => Err(ConvexityError::OracleDisagreement(format!("a good drawing of K5 cannot have {c} crossings"))),
    }
}

/// Reference canonical forms of the five `K_5` drawings.
#[derive(Clone, Debug)]
pub struct Classifier {
    refs: Vec<(K5Class, CanonicalForm)>,
}

impl Default for Classifier {
    fn default() -> Self {
        Self::new()
    }
}

impl Classifier {
    pub fn new() -> Self {
        let refs = K5Class::ALL
            .iter()
            .map(|&c| (c, canonical_form(&fixtures::reference_k5(c)).expect("K5 is small")))
            .collect();
        Classifier { refs }
    }

    pub fn reference(&self, c: K5Class) -> &CanonicalForm {
        &self.refs.iter().find(|r| r.0 == c).expect("all classes present").1
    }

    /// Class by canonical-form lookup.
    pub fn lookup(&self, k5: &Drawing) -> Option<K5Class> {
        let form = canonical_form(k5).ok()?;
        self.refs.iter().find(|r| r.1 == form).map(|r| r.0)
    }

    /// Structural rule, cross-checked against the reference forms.
    pub fn classify(&self, d: &Drawing, s: &[usize]) -> Result<K5Class, ConvexityError> {
        if s.len() != 5 {
            return Err(ConvexityError::SubsetSize(s.len()));
        }
        let k5 = d.induce(s)?;
        if k5.n() != 5 {
            return Err(ConvexityError::SubsetSize(k5.n()));
        }
        let structural = classify_k5_structural(&k5)?;
        match self.lookup(&k5) {
            Some(c) if c == structural => Ok(c),
            other => Err(ConvexityError::OracleDisagreement(format!(
                "K5 on {s:?}: crossing rule says {structural}, canonical form says {other:?}"
            ))),
        }
    }

    /// Every 5-subset inducing a non-convex `K_5`.
    pub fn forbidden_k5s(&self, d: &Drawing) -> Result<Vec<([usize; 5], K5Class)>, ConvexityError> {
        let mut out = Vec::new();
        for s in subsets(d.n(), 5) {
            let c = self.classify(d, &s)?;
            if !c.is_convex() {
                out.push(([s[0], s[1], s[2], s[3], s[4]], c));
            }
        }
        Ok(out)
    }
}

pub fn classify_k5(d: &Drawing, s: &[usize]) -> Result<K5Class, ConvexityError> {
    Classifier::new().classify(d, s)
}

/// Paths `u u' w v' v` drawn as the configuration witnessing
/// non-convexity: `u` and `v` lie on opposite sides of the 3-cycle
/// `u' w v'`, `uu'` crosses `wv'` and `vv'` crosses `u'w`. Each path is
/// listed once, oriented so that `u < v`.
pub fn detect_tilde_p4(d: &Drawing) -> Vec<[usize; 5]> {
    let n = d.n();
    let mut out = Vec::new();
    for t in triangles(n) {
        let (a, _) = sides_of_triangle(d, t);
        let side_of = |x: usize| if a.inside.binary_search(&x).is_ok() { 0 } else { 1 };
        for wi in 0..3 {
            let w = t[wi];
            let others = [t[(wi + 1) % 3], t[(wi + 2) % 3]];
            for (up, vp) in [(others[0], others[1]), (others[1], others[0])] {
                for u in (0..n).filter(|x| !t.contains(x)) {
                    if !d.cross(Edge::new(u, up), Edge::new(w, vp)) {
                        continue;
                    }
                    for v in (u + 1..n).filter(|x| !t.contains(x)) {
                        if d.cross(Edge::new(v, vp), Edge::new(up, w)) && side_of(u) != side_of(v) {
                            out.push([u, up, w, vp, v]);
                        }
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// The three convexity methods side by side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexityReport {
    pub convex: bool,
    pub bad_triangle: Option<BadTriangle>,
    pub forbidden_k5s: Vec<([usize; 5], K5Class)>,
    pub tilde_p4: Vec<[usize; 5]>,
}

/// Decides convexity by the four point property and checks the answer
/// against the `K_5` scan and the path scan.
pub fn is_convex(d: &Drawing) -> Result<ConvexityReport, ConvexityError> {
    is_convex_with(d, &Classifier::new())
}

pub fn is_convex_with(d: &Drawing, classifier: &Classifier) -> Result<ConvexityReport, ConvexityError> {
    let bad = bad_triangle(d);
    let k5s = if d.n() >= 5 { classifier.forbidden_k5s(d)? } else { Vec::new() };
    let p4 = detect_tilde_p4(d);
    let convex = bad.is_none();
    if convex != k5s.is_empty() || convex != p4.is_empty() {
        return Err(ConvexityError::OracleDisagreement(format!(
            "four point property says convex = {convex}, {} forbidden K5s, {} paths",
            k5s.len(),
            p4.len()
        )));
    }
    Ok(ConvexityReport { convex, bad_triangle: bad, forbidden_k5s: k5s, tilde_p4: p4 })
}
