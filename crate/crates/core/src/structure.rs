//! Natural subdrawings, the structure decomposition, and crossing metrics.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::canon::canonical_form;
use crate::convexity::{is_convex_fpp, sides_of_triangle, triangles};
use crate::error::StructureError;
use crate::fixtures::{binomial, optimal_k6};
use crate::hierarchy::{crossing_k4s, crossing_side};
use crate::map::{Drawing, Edge, FaceId, Node};
use crate::regions::{edge_mask, face_components, node_in, FaceSet};

/// A natural `K_r` inside a drawing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalSubgraph {
    /// Vertices, ascending.
    pub vertices: Vec<usize>,
    /// The facial `r`-cycle, starting at the smallest vertex.
    pub cycle: Vec<usize>,
    /// The face of the induced drawing bounded by the cycle, in the induced
    /// drawing's numbering.
    pub outside_face: FaceId,
}

impl NaturalSubgraph {
    pub fn r(&self) -> usize {
        self.vertices.len()
    }

    pub fn cycle_edges(&self) -> Vec<Edge> {
        let r = self.cycle.len();
        (0..r).map(|i| Edge::new(self.cycle[i], self.cycle[(i + 1) % r])).collect()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Inside and outside of the cycle in the full drawing. The inside
    /// holds the crossing of two chords.
    pub fn regions(&self, d: &Drawing) -> (FaceSet, FaceSet) {
        let comps = face_components(d, &edge_mask(d, &self.cycle_edges()));
        let c = &self.cycle;
        let x = d.crossing_of(Edge::new(c[0], c[2]), Edge::new(c[1], c[3])).expect("chords of a natural K_r cross");
        let near = d.faces_around(Node::Crossing(x))[0];
        let (inside, outside): (Vec<FaceSet>, Vec<FaceSet>) = comps.into_iter().partition(|s| s.contains(near));
        (inside.into_iter().next().expect("inside region"), outside.into_iter().next().expect("outside region"))
    }
}

/// `Some` when the subdrawing on `s` has a face bounded by a Hamiltonian
/// cycle.
pub fn natural_subgraph(d: &Drawing, s: &[usize]) -> Option<NaturalSubgraph> {
    let mut vertices = s.to_vec();
    vertices.sort_unstable();
    vertices.dedup();
    let r = vertices.len();
    if r < 4 {
        return None;
    }
    let sub = d.induce(&vertices).ok()?;
    for (i, face) in sub.faces().iter().enumerate() {
        if face.darts().len() != r || face.vertices().len() != r {
            continue;
        }
        let mut cycle: Vec<usize> = face
            .darts()
            .iter()
            .map(|&dart| match sub.tail(dart) {
                Node::Vertex(v) => vertices[v],
                Node::Crossing(_) => unreachable!("face has only vertex corners"),
            })
            .collect();
        let start = cycle.iter().enumerate().min_by_key(|&(_, &v)| v).map(|(i, _)| i).expect("non-empty");
        cycle.rotate_left(start);
        return Some(NaturalSubgraph { vertices, cycle, outside_face: FaceId(i) });
    }
    None
}

fn extends(d: &Drawing, s: &[usize], u: usize) -> bool {
    if s.contains(&u) {
        return false;
    }
    // Every K4 of a natural drawing crosses.
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            for k in j + 1..s.len() {
                let mut q = [s[i], s[j], s[k], u];
                q.sort_unstable();
                if !d.is_crossing_k4(q) {
                    return false;
                }
            }
        }
    }
    let mut t = s.to_vec();
    t.push(u);
    natural_subgraph(d, &t).is_some()
}

/// All natural subdrawings maximal under inclusion, grown one vertex at a
/// time from the crossing `K_4`s. Ordered by size descending, then
/// lexicographically.
pub fn find_natural_kr(d: &Drawing) -> Vec<NaturalSubgraph> {
    let n = d.n();
    let mut maximal = Vec::new();
    let mut stack: Vec<Vec<usize>> = crossing_k4s(d).into_iter().map(|q| q.to_vec()).collect();
    while let Some(s) = stack.pop() {
        let last = *s.last().expect("non-empty");
        for u in last + 1..n {
            if extends(d, &s, u) {
                let mut t = s.clone();
                t.push(u);
                stack.push(t);
            }
        }
        if !(0..n).any(|u| extends(d, &s, u)) {
            maximal.push(natural_subgraph(d, &s).expect("grown sets are natural"));
        }
    }
    maximal.sort_by(|a, b| b.r().cmp(&a.r()).then_with(|| a.vertices.cmp(&b.vertices)));
    maximal
}

/// Whether the edge stays in `region` apart from its ends.
fn edge_within(d: &Drawing, e: Edge, region: &FaceSet) -> bool {
    d.edge_darts(e).all(|dart| region.contains(d.dart_face(dart)))
}

/// Whether `u`, outside `j`, sends edges to `j` that cross none of its edges.
pub fn planarly_joined(d: &Drawing, j: &NaturalSubgraph, u: usize) -> bool {
    j.vertices.iter().all(|&v| {
        let e = Edge::new(u, v);
        d.edges_crossing(e).iter().all(|f| !(j.contains(f.lo()) && j.contains(f.hi())))
    })
}

/// Edges of the cycle crossed by `e`, in order along `e` from `from`.
fn cycle_hits(d: &Drawing, j: &NaturalSubgraph, e: Edge, from: usize) -> Vec<Edge> {
    let cyc = j.cycle_edges();
    d.curve_from(e, from).into_iter().map(|c| d.partner(c, e)).filter(|f| cyc.contains(f)).collect()
}

/// One growth step: an outside `u` whose edge to some `v` of the core
/// crosses the facial cycle gives a new natural subdrawing through `u`.
fn growth_options(d: &Drawing, j: &NaturalSubgraph, outside: &FaceSet) -> Vec<(usize, usize, NaturalSubgraph)> {
    let mut out = Vec::new();
    let r = j.cycle.len();
    for u in (0..d.n()).filter(|&u| !j.contains(u) && node_in(d, outside, Node::Vertex(u))) {
        for &v in &j.vertices {
            let hits = cycle_hits(d, j, Edge::new(u, v), u);
            let Some(ab) = hits.first() else { continue };
            let iv = j.cycle.iter().position(|&x| x == v).expect("v on the cycle");
            let ia = j.cycle.iter().position(|&x| x == ab.lo()).expect("a on the cycle");
            let ib = j.cycle.iter().position(|&x| x == ab.hi()).expect("b on the cycle");
            // Walk from v toward a (and toward b) along the cycle away from ab.
            let step_a = if (ia + 1) % r == ib { 1 } else { r - 1 };
            let step_b = r - step_a;
            let joined_outside = |x: usize| edge_within(d, Edge::new(u, x), outside);
            let nearest = |step: usize, stop: usize| {
                let mut i = iv;
                loop {
                    if j.cycle[i] != v && joined_outside(j.cycle[i]) {
                        return i;
                    }
                    if i == stop {
                        return i;
                    }
                    i = (i + step) % r;
                }
            };
            let wa = nearest(step_a, ia);
            let wb = nearest(step_b, ib);
            let mut path = Vec::new();
            let mut i = wa;
            loop {
                path.push(j.cycle[i]);
                if i == wb {
                    break;
                }
                i = (i + step_b) % r;
            }
            path.push(u);
            if let Some(next) = natural_subgraph(d, &path) {
                out.push((u, v, next));
            }
        }
    }
    out
}

fn closure(d: &Drawing, j: &NaturalSubgraph) -> Vec<usize> {
    let (inside, _) = j.regions(d);
    let mut out: Vec<usize> = (0..d.n()).filter(|&v| j.contains(v) || node_in(d, &inside, Node::Vertex(v))).collect();
    out.sort_unstable();
    out
}

/// A natural core with the other vertices split by side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub core: NaturalSubgraph,
    pub inside: Vec<usize>,
    pub outside: Vec<usize>,
    /// Cores reached by other growth orders from the same seed, if any.
    pub alternatives: Vec<Vec<usize>>,
}

fn grow(d: &Drawing, seed: NaturalSubgraph) -> Result<NaturalSubgraph, StructureError> {
    let mut j = seed;
    loop {
        let (_, outside) = j.regions(d);
        let Some((u, v, next)) = growth_options(d, &j, &outside).into_iter().next() else { return Ok(j) };
        let (before, after) = (closure(d, &j), closure(d, &next));
        if !(before.iter().all(|x| after.contains(x)) && after.contains(&u)) {
            return Err(StructureError::Internal(format!("growing {:?} through {u}-{v} lost vertices", j.vertices)));
        }
        j = next;
    }
}

/// Every terminal core reachable from `seed` under any growth order.
pub fn growth_cores(d: &Drawing, seed: &NaturalSubgraph) -> BTreeSet<Vec<usize>> {
    let mut done = BTreeSet::new();
    let mut seen = BTreeSet::new();
    let mut stack = alloc::vec![seed.clone()];
    while let Some(j) = stack.pop() {
        if !seen.insert(j.vertices.clone()) {
            continue;
        }
        let (_, outside) = j.regions(d);
        let opts = growth_options(d, &j, &outside);
        if opts.is_empty() {
            done.insert(j.vertices.clone());
        }
        stack.extend(opts.into_iter().map(|(_, _, next)| next));
    }
    done
}

/// Grows the largest natural subdrawing until every outside vertex is
/// planarly joined, then validates the result clause by clause.
pub fn structure_decomposition(d: &Drawing) -> Result<Decomposition, StructureError> {
    if d.n() < 5 {
        return Err(StructureError::TooSmall(d.n()));
    }
    if !is_convex_fpp(d) {
        return Err(StructureError::NotConvex);
    }
    let seed = find_natural_kr(d).into_iter().next().ok_or_else(|| StructureError::Internal("no crossing K4".into()))?;
    let core = grow(d, seed.clone())?;
    let alternatives = growth_cores(d, &seed).into_iter().filter(|c| *c != core.vertices).collect();
    let (inside_r, _) = core.regions(d);
    let (inside, outside): (Vec<usize>, Vec<usize>) =
        (0..d.n()).filter(|&v| !core.contains(v)).partition(|&v| node_in(d, &inside_r, Node::Vertex(v)));
    let dec = Decomposition { core, inside, outside, alternatives };
    let report = check_clauses(d, &dec.core);
    if let Some(c) = report.first_failure() {
        return Err(StructureError::Internal(format!("clause {c} fails for core {:?}", dec.core.vertices)));
    }
    if let Some(&u) = dec.outside.iter().find(|&&u| !planarly_joined(d, &dec.core, u)) {
        return Err(StructureError::Internal(format!("outside vertex {u} is not planarly joined")));
    }
    Ok(dec)
}

/// Which of the six properties of vertices around a natural subdrawing
/// hold.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClauseReport {
    pub holds: [bool; 6],
}

impl ClauseReport {
    pub fn all(&self) -> bool {
        self.holds.iter().all(|&b| b)
    }

    /// One-based number of the first failing clause.
    pub fn first_failure(&self) -> Option<usize> {
        self.holds.iter().position(|&b| !b).map(|i| i + 1)
    }
}

/// Checks, for a natural subdrawing `j` of a convex drawing:
/// 1. edges from inside vertices to `j` stay inside;
/// 2. edges between inside vertices stay inside;
/// 3. edges between planarly joined outside vertices stay outside;
/// 4. an edge from outside to `j` crosses the cycle at most once;
/// 5. two such edges from one vertex hit the cycle so that their ends in
///    `j` are not separated by the two hit edges;
/// 6. if `uv` crosses the cycle on `ab`, then `ua` and `ub` stay outside.
pub fn check_clauses(d: &Drawing, j: &NaturalSubgraph) -> ClauseReport {
    let (inside, outside) = j.regions(d);
    let others: Vec<usize> = (0..d.n()).filter(|&v| !j.contains(v)).collect();
    let (ins, outs): (Vec<usize>, Vec<usize>) = others.iter().partition(|&&v| node_in(d, &inside, Node::Vertex(v)));
    let mut holds = [true; 6];
    for &u in &ins {
        holds[0] &= j.vertices.iter().all(|&v| edge_within(d, Edge::new(u, v), &inside));
        holds[1] &= ins.iter().filter(|&&v| v != u).all(|&v| edge_within(d, Edge::new(u, v), &inside));
    }
    let joined: Vec<usize> = outs.iter().copied().filter(|&u| planarly_joined(d, j, u)).collect();
    for &u in &joined {
        holds[2] &= joined.iter().filter(|&&v| v != u).all(|&v| edge_within(d, Edge::new(u, v), &outside));
    }
    let r = j.cycle.len();
    let pos = |x: usize| j.cycle.iter().position(|&y| y == x).expect("on the cycle");
    // Cycle edge `i` joins positions `i` and `i + 1`.
    let edge_slot = |e: &Edge| {
        let (a, b) = (pos(e.lo()), pos(e.hi()));
        if (a + 1) % r == b {
            a
        } else {
            b
        }
    };
    for &u in &outs {
        let hits: Vec<(usize, Vec<Edge>)> = j.vertices.iter().map(|&v| (v, cycle_hits(d, j, Edge::new(u, v), u))).collect();
        for (v, h) in &hits {
            holds[3] &= h.len() <= 1;
            if let Some(ab) = h.first() {
                holds[5] &= edge_within(d, Edge::new(u, ab.lo()), &outside) && edge_within(d, Edge::new(u, ab.hi()), &outside);
                for (w, g) in &hits {
                    let Some(cd) = g.first() else { continue };
                    if w <= v || cd == ab {
                        continue;
                    }
                    // Removing two cycle edges leaves two arcs; v and w must share one.
                    let (p, q) = (edge_slot(ab), edge_slot(cd));
                    let (p, q) = (p.min(q), p.max(q));
                    let arc = |x: usize| p < pos(x) && pos(x) <= q;
                    holds[4] &= arc(*v) == arc(*w);
                }
            }
        }
    }
    ClauseReport { holds }
}

/// Shapes a convex drawing can take when no crossing `K_4` has a vertex
/// inside.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EmptyK4Shape {
    NaturalKn,
    NaturalKn1PlusOutside,
    OptimalK6,
    NotApplicable,
}

impl EmptyK4Shape {
    pub fn name(self) -> &'static str {
        match self {
            EmptyK4Shape::NaturalKn => "natural-Kn",
            EmptyK4Shape::NaturalKn1PlusOutside => "natural-Kn-1-plus-outside",
            EmptyK4Shape::OptimalK6 => "optimal-K6",
            EmptyK4Shape::NotApplicable => "not-applicable",
        }
    }
}

pub fn empty_crossing_k4_classify(d: &Drawing) -> Result<EmptyK4Shape, StructureError> {
    let n = d.n();
    if n < 5 {
        return Err(StructureError::TooSmall(n));
    }
    if !is_convex_fpp(d) {
        return Err(StructureError::NotConvex);
    }
    for q in crossing_k4s(d) {
        let side = crossing_side(d, q).expect("crossing K4");
        if (0..n).filter(|v| !q.contains(v)).any(|v| node_in(d, &side, Node::Vertex(v))) {
            return Ok(EmptyK4Shape::NotApplicable);
        }
    }
    let all: Vec<usize> = (0..n).collect();
    if natural_subgraph(d, &all).is_some() {
        return Ok(EmptyK4Shape::NaturalKn);
    }
    for u in 0..n {
        let rest: Vec<usize> = all.iter().copied().filter(|&v| v != u).collect();
        if let Some(j) = natural_subgraph(d, &rest) {
            let (_, outside) = j.regions(d);
            if node_in(d, &outside, Node::Vertex(u)) && planarly_joined(d, &j, u) {
                return Ok(EmptyK4Shape::NaturalKn1PlusOutside);
            }
        }
    }
    if n == 6 && d.crossing_count() == 3 && canonical_form(d) == canonical_form(&optimal_k6()) {
        return Ok(EmptyK4Shape::OptimalK6);
    }
    Err(StructureError::Internal("no crossing K4 has a vertex inside, yet none of the three shapes fits".into()))
}

/// Triangles with a side containing no vertex.
pub fn empty_triangles(d: &Drawing) -> Vec<[usize; 3]> {
    triangles(d.n())
        .filter(|&t| {
            let (a, b) = sides_of_triangle(d, t);
            a.inside.is_empty() || b.inside.is_empty()
        })
        .collect()
}

/// `H(n) = (1/4) floor(n/2) floor((n-1)/2) floor((n-2)/2) floor((n-3)/2)`.
pub fn hill_number(n: usize) -> u64 {
    if n < 4 {
        return 0;
    }
    let n = n as u64;
    (n / 2) * ((n - 1) / 2) * ((n - 2) / 2) * ((n - 3) / 2) / 4
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Metrics {
    pub crossings: u64,
    pub hill: u64,
    pub deficiency: i64,
    pub empty_triangles: u64,
    pub max_crossings: u64,
}

pub fn metrics(d: &Drawing) -> Metrics {
    let crossings = d.crossing_count() as u64;
    let hill = hill_number(d.n());
    Metrics {
        crossings,
        hill,
        deficiency: crossings as i64 - hill as i64,
        empty_triangles: empty_triangles(d).len() as u64,
        max_crossings: binomial(d.n(), 4) as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{k6_11, natural, tilde_k5_5, tin_can};
    use crate::geometry::{build_polyline, Point};
    use crate::map::tests::crossing_k4;
    use alloc::collections::BTreeMap;
    use alloc::vec;

    /// Natural `K_5` with its chords bent outside the pentagon, and a sixth
    /// vertex in the pentagon's middle.
    fn natural_k5_plus_centre() -> Drawing {
        let ring = [(0, 100), (-95, 31), (-59, -81), (59, -81), (95, 31)];
        let mut points: Vec<Point> = ring.iter().map(|&(x, y)| Point::int(x, y)).collect();
        points.push(Point::int(0, 0));
        let mut bends = BTreeMap::new();
        for k in 0..5 {
            let (x, y) = ring[(k + 1) % 5];
            bends.insert(Edge::new(k, (k + 2) % 5), vec![Point::int(3 * x, 3 * y)]);
        }
        // Bends are listed from the lower end; one per chord so direction is moot.
        build_polyline(&points, &bends).unwrap()
    }

    #[test]
    fn natural_sets() {
        let found = find_natural_kr(&natural(7));
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].r(), 7);
        let k4 = Drawing::from_raw(&crossing_k4()).unwrap();
        assert_eq!(find_natural_kr(&k4)[0].vertices, vec![0, 1, 2, 3]);
        assert!(find_natural_kr(&tilde_k5_5()).iter().all(|j| j.r() == 4));
    }

    #[test]
    fn decompositions() {
        let d = structure_decomposition(&natural(6)).unwrap();
        assert_eq!(d.core.r(), 6);
        assert!(d.inside.is_empty() && d.outside.is_empty());

        let opt = crate::fixtures::optimal_k6();
        let d = structure_decomposition(&opt).unwrap();
        assert_eq!(d.core.r(), 4);
        assert_eq!(d.outside.len(), 2);

        let d = structure_decomposition(&k6_11()).unwrap();
        assert!(check_clauses(&k6_11(), &d.core).all());
        assert_eq!(structure_decomposition(&crate::fixtures::tilde_k5_3()), Err(StructureError::NotConvex));
    }

    #[test]
    fn clauses_hold_for_every_natural_subset_of_tc8() {
        let d = tin_can(4);
        for j in find_natural_kr(&d) {
            assert!(check_clauses(&d, &j).all(), "{:?}", j.vertices);
        }
    }

    #[test]
    fn empty_k4_shapes() {
        assert_eq!(empty_crossing_k4_classify(&natural(7)), Ok(EmptyK4Shape::NaturalKn));
        assert_eq!(empty_crossing_k4_classify(&crate::fixtures::optimal_k6()), Ok(EmptyK4Shape::OptimalK6));
        let d = natural_k5_plus_centre();
        assert_eq!(d.crossing_count(), 5);
        assert_eq!(empty_crossing_k4_classify(&d), Ok(EmptyK4Shape::NaturalKn1PlusOutside));
        assert_eq!(empty_crossing_k4_classify(&tin_can(4)), Ok(EmptyK4Shape::NotApplicable));
    }

    #[test]
    fn counts() {
        assert_eq!([hill_number(7), hill_number(8), hill_number(9)], [9, 18, 36]);
        let k4 = Drawing::from_raw(&crossing_k4()).unwrap();
        assert_eq!(empty_triangles(&k4).len(), 4);
        assert_eq!(metrics(&tin_can(4)).deficiency, 0);
        assert!(empty_triangles(&tin_can(4)).len() >= 8);
        for n in 4..=9 {
            assert!(metrics(&natural(n)).deficiency >= 0);
        }
    }
}
