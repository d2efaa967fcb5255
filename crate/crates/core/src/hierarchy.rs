//! h-convexity and f-convexity.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::canon::{canonical_form, CanonicalForm};
use crate::convexity::{convex_side, four_point_property, is_convex_fpp, sides_of_triangle, subsets, triangle_edges, triangles, TriangleSide};
use crate::error::HierarchyError;
use crate::fixtures;
use crate::map::{Drawing, Edge, FaceId, Node};
use crate::regions::{edge_mask, face_components, FaceSet};

/// A crossing `K_4` as its vertex set, ascending.
pub type Quad = [usize; 4];

/// Every crossing `K_4`, in lexicographic order.
pub fn crossing_k4s(d: &Drawing) -> Vec<Quad> {
    subsets(d.n(), 4)
        .into_iter()
        .map(|s| [s[0], s[1], s[2], s[3]])
        .filter(|&q| d.is_crossing_k4(q))
        .collect()
}

/// The 4-cycle of a crossing `K_4` formed by its four uncrossed edges.
pub fn facial_cycle(d: &Drawing, q: Quad) -> Option<[Edge; 4]> {
    let (e, f) = d.k4_crossing(q)?;
    let (a, b) = (e.lo(), e.hi());
    let (c, dd) = (f.lo(), f.hi());
    Some([Edge::new(a, c), Edge::new(c, b), Edge::new(b, dd), Edge::new(dd, a)])
}

fn rest(q: Quad, t: [usize; 3]) -> usize {
    *q.iter().find(|v| !t.contains(v)).expect("a quad has a fourth vertex")
}

fn sub_triangles(q: Quad) -> [[usize; 3]; 4] {
    let [a, b, c, d] = q;
    [[a, b, c], [a, b, d], [a, c, d], [b, c, d]]
}

/// Side of `t` not containing `away`.
fn side_avoiding(d: &Drawing, t: [usize; 3], away: usize) -> TriangleSide {
    let (a, b) = sides_of_triangle(d, t);
    if a.inside.contains(&away) {
        b
    } else {
        a
    }
}

/// Whether the curve of `t` lies in the closed disk `side`: no edge of `t`
/// crosses the disk's boundary, and every segment of an edge of `t` off the
/// boundary has faces of the disk on both sides.
pub fn curve_within(d: &Drawing, t: [usize; 3], side: &TriangleSide) -> bool {
    let te = triangle_edges(t);
    let se = side.edges();
    for &e in &te {
        for &f in &se {
            if e != f && !e.is_adjacent(f) && d.cross(e, f) {
                return false;
            }
        }
    }
    for &e in te.iter().filter(|e| !se.contains(e)) {
        for dart in d.edge_darts(e) {
            if !side.faces.contains(d.dart_face(dart)) {
                return false;
            }
        }
    }
    true
}

/// Two crossing `K_4`s with 3-cycles whose forced sides violate nesting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvertedPair {
    pub first: Quad,
    pub second: Quad,
    pub first_triangle: [usize; 3],
    pub second_triangle: [usize; 3],
}

struct Forced {
    quad: Quad,
    side: TriangleSide,
}

fn forced_sides(d: &Drawing) -> Vec<Forced> {
    let mut out = Vec::new();
    for q in crossing_k4s(d) {
        for t in sub_triangles(q) {
            out.push(Forced { quad: q, side: side_avoiding(d, t, rest(q, t)) });
        }
    }
    out
}

fn inverted(d: &Drawing, a: &Forced, b: &Forced) -> bool {
    curve_within(d, a.side.triangle, &b.side) && !a.side.faces.is_subset(&b.side.faces)
}

/// Finds an inverted pair of crossing `K_4`s, checking that the relation
/// is symmetric on the pair returned.
pub fn find_inverted_k4_pair(d: &Drawing) -> Result<Option<InvertedPair>, HierarchyError> {
    let forced = forced_sides(d);
    for a in &forced {
        for b in &forced {
            if a.quad == b.quad || !inverted(d, a, b) {
                continue;
            }
            if !inverted(d, b, a) {
                return Err(HierarchyError::OracleDisagreement(format!(
                    "inversion of {:?}/{:?} and {:?}/{:?} is not symmetric",
                    a.quad, a.side.triangle, b.quad, b.side.triangle
                )));
            }
            return Ok(Some(InvertedPair { first: a.quad, second: b.quad, first_triangle: a.side.triangle, second_triangle: b.side.triangle }));
        }
    }
    Ok(None)
}

/// Reference canonical form of the convex, non-h-convex `K_6`.
pub fn k6_11_form() -> CanonicalForm {
    canonical_form(&fixtures::k6_11()).expect("K6 is small")
}

/// Every 6-subset inducing the convex, non-h-convex `K_6`.
pub fn k6_11_subsets(d: &Drawing, reference: &CanonicalForm) -> Vec<[usize; 6]> {
    let mut out = Vec::new();
    if d.n() < 6 {
        return out;
    }
    for s in subsets(d.n(), 6) {
        if d.crossings_within(&s) != reference.crossings() {
            continue;
        }
        let sub = d.induce(&s).expect("six vertices");
        if canonical_form(&sub).expect("K6 is small") == *reference {
            out.push([s[0], s[1], s[2], s[3], s[4], s[5]]);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HConvexVerdict {
    pub convex: bool,
    pub h_convex: bool,
    pub k6_11: Vec<[usize; 6]>,
    pub inverted: Option<InvertedPair>,
}

/// h-convexity by the `K_6` scan, checked against the inverted-pair scan.
pub fn is_h_convex(d: &Drawing) -> Result<HConvexVerdict, HierarchyError> {
    is_h_convex_with(d, &k6_11_form())
}

pub fn is_h_convex_with(d: &Drawing, reference: &CanonicalForm) -> Result<HConvexVerdict, HierarchyError> {
    if !is_convex_fpp(d) {
        return Ok(HConvexVerdict { convex: false, h_convex: false, k6_11: Vec::new(), inverted: None });
    }
    let k6 = k6_11_subsets(d, reference);
    let inv = find_inverted_k4_pair(d)?;
    if k6.is_empty() != inv.is_none() {
        return Err(HierarchyError::OracleDisagreement(format!(
            "{} copies of the forbidden K6 but inverted pair {:?}",
            k6.len(),
            inv
        )));
    }
    Ok(HConvexVerdict { convex: true, h_convex: k6.is_empty(), k6_11: k6, inverted: inv })
}

/// One chosen side for every 3-cycle, in lexicographic triangle order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideAssignment {
    pub sides: Vec<TriangleSide>,
}

impl SideAssignment {
    pub fn get(&self, t: [usize; 3]) -> Option<&TriangleSide> {
        let mut t = t;
        t.sort_unstable();
        self.sides.iter().find(|s| s.triangle == t)
    }
}

fn fewer_faces_first(a: TriangleSide, b: TriangleSide) -> TriangleSide {
    match a.faces.len().cmp(&b.faces.len()) {
        core::cmp::Ordering::Less => a,
        core::cmp::Ordering::Greater => b,
        core::cmp::Ordering::Equal => {
            if a.faces.first() < b.faces.first() {
                a
            } else {
                b
            }
        }
    }
}

/// Builds a hereditary choice of convex sides: forced sides of triangles in
/// crossing `K_4`s first, then every other triangle in lexicographic order
/// nested inside an already chosen side containing it when there is one.
pub fn construct_hereditary_witness(d: &Drawing) -> Result<SideAssignment, HierarchyError> {
    if !is_convex_fpp(d) {
        return Err(HierarchyError::NotConvex);
    }
    if let Some(p) = find_inverted_k4_pair(d)? {
        return Err(HierarchyError::InvertedPairExists { first: p.first, second: p.second });
    }
    let all: Vec<[usize; 3]> = triangles(d.n()).collect();
    let mut chosen: Vec<Option<TriangleSide>> = vec![None; all.len()];
    let index = |t: [usize; 3]| all.iter().position(|&x| x == t).expect("triangle index");
    let mut order: Vec<usize> = Vec::new();
    for f in forced_sides(d) {
        let i = index(f.side.triangle);
        match &chosen[i] {
            None => {
                chosen[i] = Some(f.side);
                order.push(i);
            }
            Some(s) if *s == f.side => {}
            Some(_) => return Err(HierarchyError::NotConvex),
        }
    }
    for (i, &t) in all.iter().enumerate() {
        if chosen[i].is_some() {
            continue;
        }
        let (a, b) = sides_of_triangle(d, t);
        let host = order.iter().map(|&j| chosen[j].as_ref().expect("ordered entries are chosen")).find(|s| curve_within(d, t, s));
        let pick = match host {
            Some(h) if a.faces.is_subset(&h.faces) => a,
            Some(h) if b.faces.is_subset(&h.faces) => b,
            Some(h) => {
                return Err(HierarchyError::OracleDisagreement(format!("no side of {t:?} nests inside the side of {:?}", h.triangle)));
            }
            None => fewer_faces_first(a, b),
        };
        chosen[i] = Some(pick);
        order.push(i);
    }
    Ok(SideAssignment { sides: chosen.into_iter().map(|s| s.expect("every triangle chosen")).collect() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssignmentVerdict {
    pub valid: bool,
    /// Chosen sides failing the four point property.
    pub fpp_failures: Vec<[usize; 3]>,
    /// Non-crossing `K_4`s with fewer than three chosen faces.
    pub k4_failures: Vec<Quad>,
}

/// Checks a side assignment through four-vertex conditions, and confirms
/// the answer against convexity of every side plus direct nesting.
pub fn verify_side_assignment(d: &Drawing, a: &SideAssignment) -> Result<AssignmentVerdict, HierarchyError> {
    let fpp_failures: Vec<[usize; 3]> = a.sides.iter().filter(|s| !four_point_property(d, s)).map(|s| s.triangle).collect();
    let mut k4_failures = Vec::new();
    for s in subsets(d.n(), 4) {
        let q = [s[0], s[1], s[2], s[3]];
        if d.is_crossing_k4(q) {
            continue;
        }
        let faces = sub_triangles(q)
            .into_iter()
            .filter(|&t| a.get(t).is_some_and(|side| !side.inside.contains(&rest(q, t))))
            .count();
        if faces < 3 {
            k4_failures.push(q);
        }
    }
    let valid = fpp_failures.is_empty() && k4_failures.is_empty();
    let direct = a.sides.iter().all(|s| convex_side(d, s))
        && a.sides.iter().all(|outer| {
            a.sides.iter().all(|inner| !curve_within(d, inner.triangle, outer) || inner.faces.is_subset(&outer.faces))
        });
    if valid != direct {
        return Err(HierarchyError::OracleDisagreement(format!(
            "four-vertex test says {valid}, direct convexity and nesting say {direct}"
        )));
    }
    Ok(AssignmentVerdict { valid, fpp_failures, k4_failures })
}

/// Faces painted by the crossing sides of the facial 4-cycles of crossing
/// `K_4`s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaintState {
    pub painted: FaceSet,
    /// For each face, the crossing `K_4`s that painted it.
    pub contributors: Vec<Vec<Quad>>,
}

impl PaintState {
    pub fn unpainted(&self) -> Vec<FaceId> {
        self.painted.complement().iter().collect()
    }
}

/// Crossing side of the facial 4-cycle of a crossing `K_4`.
pub fn crossing_side(d: &Drawing, q: Quad) -> Option<FaceSet> {
    let (e, f) = d.k4_crossing(q)?;
    let cycle = facial_cycle(d, q)?;
    let comps = face_components(d, &edge_mask(d, &cycle));
    let x = d.crossing_of(e, f).expect("the pair crosses");
    let near = d.faces_around(Node::Crossing(x))[0];
    comps.into_iter().find(|c| c.contains(near))
}

pub fn paint_faces(d: &Drawing) -> PaintState {
    let mut painted = FaceSet::empty(d.face_count());
    let mut contributors = vec![Vec::new(); d.face_count()];
    for q in crossing_k4s(d) {
        let side = crossing_side(d, q).expect("crossing K4");
        for f in side.iter() {
            contributors[f.0].push(q);
        }
        painted.union_with(&side);
    }
    PaintState { painted, contributors }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FConvexVerdict {
    pub f_convex: bool,
    pub unpainted: Vec<FaceId>,
}

/// f-convexity by painting; on success, every 3-cycle's side away from the
/// first unpainted face is checked to be convex.
pub fn is_f_convex(d: &Drawing) -> Result<FConvexVerdict, HierarchyError> {
    let paint = paint_faces(d);
    let unpainted = paint.unpainted();
    if let Some(&gamma) = unpainted.first() {
        for t in triangles(d.n()) {
            let (a, b) = sides_of_triangle(d, t);
            let away = if a.faces.contains(gamma) { b } else { a };
            if !convex_side(d, &away) {
                return Err(HierarchyError::OracleDisagreement(format!(
                    "face {} is unpainted but the side of {t:?} away from it is not convex",
                    gamma.0
                )));
            }
        }
    }
    Ok(FConvexVerdict { f_convex: !unpainted.is_empty(), unpainted })
}

/// Levels of the convexity hierarchy, weakest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    GoodOnly,
    Convex,
    HConvex,
    FConvex,
}

impl Level {
    pub fn name(self) -> &'static str {
        match self {
            Level::GoodOnly => "good-only",
            Level::Convex => "convex",
            Level::HConvex => "h-convex",
            Level::FConvex => "f-convex",
        }
    }
}

/// Combines the three deciders, checking that each level implies the
/// weaker ones.
pub fn level(convex: bool, h: &HConvexVerdict, f: &FConvexVerdict) -> Result<Level, HierarchyError> {
    if (f.f_convex && !h.h_convex) || (h.h_convex && !convex) {
        return Err(HierarchyError::OracleDisagreement(format!(
            "hierarchy out of order: convex {convex}, h-convex {}, f-convex {}",
            h.h_convex, f.f_convex
        )));
    }
    Ok(if f.f_convex {
        Level::FConvex
    } else if h.h_convex {
        Level::HConvex
    } else if convex {
        Level::Convex
    } else {
        Level::GoodOnly
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::fixtures::{k6_11, natural, tilde_k5_3, tin_can};
    use crate::map::tests::{crossing_k4, planar_k4};
    use crate::reroute::{reroute_along_path, Side};

    /// `t`'s curve lies in `s` when no edge of `t` crosses an edge of the
    /// boundary and every vertex of `t` is on the boundary or inside.
    fn within_by_vertices(d: &Drawing, t: [usize; 3], s: &TriangleSide) -> bool {
        let te = triangle_edges(t);
        let crossing = te.iter().any(|&e| s.edges().iter().any(|&f| d.cross(e, f)));
        !crossing && t.iter().all(|v| s.triangle.contains(v) || s.inside.contains(v))
    }

    /// Searches every choice of convex sides for a hereditary one.
    pub(crate) fn brute_h_convex(d: &Drawing) -> bool {
        let options: Vec<Vec<TriangleSide>> = triangles(d.n())
            .map(|t| {
                let (a, b) = sides_of_triangle(d, t);
                [a, b].into_iter().filter(|s| convex_side(d, s)).collect()
            })
            .collect();
        fn go(d: &Drawing, options: &[Vec<TriangleSide>], chosen: &mut Vec<TriangleSide>) -> bool {
            let Some(opts) = options.get(chosen.len()) else { return true };
            for s in opts {
                let ok = chosen.iter().all(|c| {
                    (!within_by_vertices(d, s.triangle, c) || s.faces.is_subset(&c.faces))
                        && (!within_by_vertices(d, c.triangle, s) || c.faces.is_subset(&s.faces))
                });
                if ok {
                    chosen.push(s.clone());
                    if go(d, options, chosen) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        go(d, &options, &mut Vec::new())
    }

    /// Some face with every 3-cycle's side away from it convex.
    pub(crate) fn brute_f_convex(d: &Drawing) -> bool {
        (0..d.face_count()).map(FaceId).any(|g| {
            triangles(d.n()).all(|t| {
                let (a, b) = sides_of_triangle(d, t);
                convex_side(d, if a.faces.contains(g) { &b } else { &a })
            })
        })
    }

    fn check_all(d: &Drawing) -> (bool, bool, bool) {
        let convex = is_convex_fpp(d);
        let h = is_h_convex(d).unwrap();
        let f = is_f_convex(d).unwrap();
        assert_eq!(h.h_convex, convex && brute_h_convex(d));
        assert_eq!(f.f_convex, brute_f_convex(d));
        level(convex, &h, &f).unwrap();
        if h.h_convex {
            let w = construct_hereditary_witness(d).unwrap();
            assert!(verify_side_assignment(d, &w).unwrap().valid);
        }
        (convex, h.h_convex, f.f_convex)
    }

    #[test]
    fn k6_11_is_convex_but_not_h_convex() {
        let d = k6_11();
        assert_eq!(d.crossing_count(), 11);
        assert_eq!(check_all(&d), (true, false, false));
        let v = is_h_convex(&d).unwrap();
        assert_eq!(v.k6_11, vec![[0, 1, 2, 3, 4, 5]]);
        let p = v.inverted.unwrap();
        assert!(d.is_crossing_k4(p.first) && d.is_crossing_k4(p.second));
        assert!(matches!(construct_hereditary_witness(&d), Err(HierarchyError::InvertedPairExists { .. })));
    }

    #[test]
    fn natural_drawings_are_f_convex() {
        for n in 4..=7 {
            assert_eq!(check_all(&natural(n)), (true, true, true), "n = {n}");
        }
    }

    #[test]
    fn natural_k5_paints_all_but_the_pentagon() {
        let d = natural(5);
        let paint = paint_faces(&d);
        let free = paint.unpainted();
        assert_eq!(free.len(), 1);
        assert_eq!(d.face(free[0]).vertices().len(), 5);
        let w = construct_hereditary_witness(&d).unwrap();
        assert!(w.sides.iter().all(|s| !s.faces.contains(free[0])));
    }

    #[test]
    fn small_tin_cans() {
        assert_eq!(check_all(&tin_can(3)), (true, true, true));
        let tc8 = tin_can(4);
        assert_eq!(check_all(&tc8), (true, true, false));
        assert_eq!(find_inverted_k4_pair(&tc8).unwrap(), None);
        assert!(paint_faces(&tc8).unpainted().is_empty());
    }

    #[test]
    fn non_convex_is_nothing_more() {
        assert_eq!(check_all(&tilde_k5_3()), (false, false, false));
        assert_eq!(construct_hereditary_witness(&tilde_k5_3()), Err(HierarchyError::NotConvex));
    }

    #[test]
    fn four_vertex_assignments() {
        let d = Drawing::from_raw(&planar_k4()).unwrap();
        let faces = |choose_faces: &[bool; 4]| SideAssignment {
            sides: triangles(4)
                .zip(choose_faces)
                .map(|(t, &face)| {
                    let q = rest([0, 1, 2, 3], t);
                    let (a, b) = sides_of_triangle(&d, t);
                    if a.inside.contains(&q) != face { a } else { b }
                })
                .collect(),
        };
        assert!(verify_side_assignment(&d, &faces(&[true; 4])).unwrap().valid);
        assert!(verify_side_assignment(&d, &faces(&[true, true, true, false])).unwrap().valid);
        let two = verify_side_assignment(&d, &faces(&[true, false, true, false])).unwrap();
        assert!(!two.valid);
        assert_eq!(two.k4_failures, vec![[0, 1, 2, 3]]);
        let paint = paint_faces(&d);
        assert!(paint.painted.is_empty());
        let crossing = Drawing::from_raw(&crossing_k4()).unwrap();
        assert_eq!(paint_faces(&crossing).unpainted().len(), 1);
    }

    #[test]
    fn random_reroutes_agree_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let edges: Vec<Edge> = crate::map::all_edges(6).collect();
        let mut verdicts = [0usize; 4];
        for round in 0..120 {
            let mut d = [natural(6), tin_can(3), k6_11()][round % 3].clone();
            for _ in 0..rng.gen_range(0..4) {
                let e = edges[rng.gen_range(0..edges.len())];
                let w = (0..6).filter(|&w| !e.contains(w)).nth(rng.gen_range(0..4)).unwrap();
                let side = if rng.gen() { Side::Left } else { Side::Right };
                if let Ok(out) = reroute_along_path(&d, e, w, side) {
                    d = out;
                }
            }
            let (c, h, f) = check_all(&d);
            verdicts[c as usize + h as usize + f as usize] += 1;
        }
        // The sample never meets an h-convex K6 that is not f-convex.
        assert!(verdicts[0] > 0 && verdicts[1] > 0 && verdicts[3] > 0, "{verdicts:?}");
    }
}
