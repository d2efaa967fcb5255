//! Crossing reduction for drawings with one restricted non-convex `K_5`.
//!
//! Labels follow the usual figure: in `tilde-K5-3`, `st` is crossed by
//! `wu` and `wv`, and `su` crosses `tv`; in `tilde-K5-5`, `tv` crosses the
//! three edges of `suw`, `su` crosses `tw` and `uw` crosses `sv`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::convexity::{classify_k5_structural, is_convex_fpp, sides_of_triangle, subsets, K5Class};
use crate::error::RerouteError;
use crate::map::{CrossingId, Drawing, Edge, Node};
use crate::regions::{edge_mask, face_components, mark_stretch, node_in, node_touches, FaceSet};
use crate::reroute::{corridor, reroute_along_path, reroute_avoiding, Side};

/// The five labelled vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Labels {
    pub s: usize,
    pub t: usize,
    pub u: usize,
    pub v: usize,
    pub w: usize,
}

impl Labels {
    fn from_array([s, t, u, v, w]: [usize; 5]) -> Self {
        Labels { s, t, u, v, w }
    }

    pub fn vertices(&self) -> [usize; 5] {
        [self.s, self.t, self.u, self.v, self.w]
    }

    fn e(a: usize, b: usize) -> Edge {
        Edge::new(a, b)
    }

    /// The involution swapping `s` with `w` and `t` with `v`.
    pub fn theta(&self) -> Labels {
        Labels { s: self.w, t: self.v, u: self.u, v: self.t, w: self.s }
    }

    fn edges(&self) -> Vec<Edge> {
        let vs = self.vertices();
        let mut out = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                out.push(Edge::new(vs[i], vs[j]));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisVerdict {
    pub holds: bool,
    pub class: K5Class,
    /// A `K_7` through the five vertices with another non-convex `K_5`.
    pub violation: Option<(Vec<usize>, Vec<usize>)>,
}

fn sorted5(s: &[usize]) -> Result<[usize; 5], RerouteError> {
    let mut v = s.to_vec();
    v.sort_unstable();
    v.dedup();
    if v.len() != 5 {
        return Err(RerouteError::BadRequest(format!("need five distinct vertices, got {s:?}")));
    }
    Ok([v[0], v[1], v[2], v[3], v[4]])
}

fn class_of(d: &Drawing, s: &[usize]) -> Result<K5Class, RerouteError> {
    let sub = d.induce(s)?;
    Ok(classify_k5_structural(&sub)?)
}

/// Whether every `K_7` containing `s` has `s` as its only non-convex `K_5`.
pub fn check_hypothesis(d: &Drawing, s: &[usize]) -> Result<HypothesisVerdict, RerouteError> {
    let s = sorted5(s)?;
    let class = class_of(d, &s)?;
    if class.is_convex() {
        return Err(RerouteError::NotForbiddenK5(s.to_vec()));
    }
    let rest: Vec<usize> = (0..d.n()).filter(|v| !s.contains(v)).collect();
    let mut checked = BTreeSet::new();
    for (i, &a) in rest.iter().enumerate() {
        for &b in &rest[i + 1..] {
            let mut h = s.to_vec();
            h.extend([a, b]);
            h.sort_unstable();
            for pick in subsets(7, 5) {
                let k: Vec<usize> = pick.iter().map(|&i| h[i]).collect();
                if k == s || !checked.insert(k.clone()) {
                    continue;
                }
                if !is_convex_fpp(&d.induce(&k)?) {
                    return Ok(HypothesisVerdict { holds: false, class, violation: Some((h, k)) });
                }
            }
        }
    }
    Ok(HypothesisVerdict { holds: true, class, violation: None })
}

fn permutations(s: [usize; 5]) -> Vec<[usize; 5]> {
    let mut out = Vec::new();
    let mut idx = [0, 1, 2, 3, 4];
    fn rec(k: usize, idx: &mut [usize; 5], s: &[usize; 5], out: &mut Vec<[usize; 5]>) {
        if k == 5 {
            out.push(idx.map(|i| s[i]));
            return;
        }
        for i in k..5 {
            idx.swap(k, i);
            rec(k + 1, idx, s, out);
            idx.swap(k, i);
        }
    }
    rec(0, &mut idx, &s, &mut out);
    out.sort_unstable();
    out
}

/// The crossing pairs within the `K_5`, as a set.
fn pattern(d: &Drawing, l: &Labels) -> BTreeSet<(Edge, Edge)> {
    let es = l.edges();
    let mut out = BTreeSet::new();
    for (i, &e) in es.iter().enumerate() {
        for &f in &es[i + 1..] {
            if d.cross(e, f) {
                out.insert((e.min(f), e.max(f)));
            }
        }
    }
    out
}

fn expected(l: &Labels, class: K5Class) -> BTreeSet<(Edge, Edge)> {
    let e = Labels::e;
    let Labels { s, t, u, v, w } = *l;
    let pairs = match class {
        K5Class::TildeK5_3 => alloc::vec![(e(s, t), e(w, u)), (e(s, t), e(w, v)), (e(s, u), e(t, v))],
        _ => alloc::vec![(e(t, v), e(s, u)), (e(t, v), e(s, w)), (e(t, v), e(u, w)), (e(s, u), e(t, w)), (e(u, w), e(s, v))],
    };
    pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect()
}

/// Every labelling of `s` whose crossings match the figure, in
/// lexicographic order of `(s, t, u, v, w)`.
pub fn labellings(d: &Drawing, s: &[usize], class: K5Class) -> Result<Vec<Labels>, RerouteError> {
    let s = sorted5(s)?;
    Ok(permutations(s).into_iter().map(Labels::from_array).filter(|l| pattern(d, l) == expected(l, class)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionContext {
    pub vertices: [usize; 5],
    pub labels: Labels,
    pub kind: K5Class,
    pub r1: FaceSet,
    pub r2: FaceSet,
    pub in_r1: Vec<usize>,
    pub in_r2: Vec<usize>,
    /// The crossing of `su` and `tv`.
    pub cross: CrossingId,
    pub theta_applied: bool,
}

fn violated(claim: &'static str, witness: String) -> RerouteError {
    RerouteError::ClaimViolated { claim, witness }
}

/// Edges of the `K_5` that `e` crosses, as a set.
fn hits(d: &Drawing, l: &Labels, e: Edge) -> BTreeSet<Edge> {
    let es = l.edges();
    d.edges_crossing(e).into_iter().filter(|f| es.contains(f)).collect()
}

fn set(edges: &[Edge]) -> BTreeSet<Edge> {
    edges.iter().copied().collect()
}

fn edge_within(d: &Drawing, e: Edge, region: &FaceSet) -> bool {
    d.edge_darts(e).all(|dart| region.contains(d.dart_face(dart)))
}

fn split(d: &Drawing, s: &[usize; 5], r1: &FaceSet, r2: &FaceSet) -> (Vec<usize>, Vec<usize>) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for v in (0..d.n()).filter(|v| !s.contains(v)) {
        if node_in(d, r1, Node::Vertex(v)) {
            a.push(v);
        } else if node_in(d, r2, Node::Vertex(v)) {
            b.push(v);
        }
    }
    (a, b)
}

fn regions_k53(d: &Drawing, l: &Labels, cross: CrossingId) -> Result<(FaceSet, FaceSet), RerouteError> {
    let e = Labels::e;
    let Labels { s, t, u, v, w } = *l;
    let mut blocked = edge_mask(d, &[e(w, t), e(s, w)]);
    mark_stretch(d, &mut blocked, e(t, v), Node::Vertex(t), Node::Crossing(cross));
    mark_stretch(d, &mut blocked, e(s, u), Node::Crossing(cross), Node::Vertex(s));
    let r1 = face_components(d, &blocked)
        .into_iter()
        .find(|c| !node_touches(d, c, Node::Vertex(u)) && !node_touches(d, c, Node::Vertex(v)))
        .ok_or_else(|| violated("regions", "no side of w-t-x-s avoids u and v".into()))?;
    let r2 = face_components(d, &edge_mask(d, &[e(s, t), e(t, u), e(u, v), e(v, s)]))
        .into_iter()
        .find(|c| !node_touches(d, c, Node::Vertex(w)))
        .ok_or_else(|| violated("regions", "no side of s-t-u-v avoids w".into()))?;
    Ok((r1, r2))
}

fn regions_k55(d: &Drawing, l: &Labels) -> Result<(FaceSet, FaceSet), RerouteError> {
    let comps = face_components(d, &edge_mask(d, &l.edges()));
    let touching = |vs: [usize; 3]| {
        let found: Vec<&FaceSet> = comps.iter().filter(|c| vs.iter().all(|&x| node_touches(d, c, Node::Vertex(x)))).collect();
        match found.as_slice() {
            [one] => Ok((*one).clone()),
            _ => Err(violated("regions", format!("{} faces meet all of {vs:?}", found.len()))),
        }
    };
    Ok((touching([l.s, l.t, l.u])?, touching([l.u, l.v, l.w])?))
}

fn check_empty_sides(d: &Drawing, l: &Labels) -> Result<(), RerouteError> {
    let j = l.vertices();
    for t in [[l.s, l.t, l.w], [l.s, l.u, l.v], [l.t, l.u, l.v]] {
        let (a, b) = sides_of_triangle(d, t);
        for side in [a, b] {
            if side.inside.iter().all(|x| !j.contains(x)) && !side.inside.is_empty() {
                return Err(violated("empty sides", format!("vertex {} lies in the empty side of {t:?}", side.inside[0])));
            }
        }
    }
    Ok(())
}

fn check_routings_k53(d: &Drawing, ctx: &ReductionContext) -> Result<(), RerouteError> {
    let l = ctx.labels;
    let e = Labels::e;
    let Labels { s, t, u, v, w } = l;
    let fail = |what: String| Err(violated("routings", what));
    for &x in &ctx.in_r1 {
        if !hits(d, &l, e(x, u)).is_subset(&set(&[e(t, v)])) || !hits(d, &l, e(x, v)).is_subset(&set(&[e(s, u)])) {
            return fail(format!("edges from {x} to u, v"));
        }
        if !hits(d, &l, e(x, s)).is_empty() || !hits(d, &l, e(x, t)).is_empty() {
            return fail(format!("edges from {x} to s, t"));
        }
        let xw = hits(d, &l, e(x, w));
        if !xw.is_empty() && !(xw.contains(&e(s, t)) && (xw.contains(&e(s, u)) || xw.contains(&e(t, v)))) {
            return fail(format!("edge {x}-w crosses {xw:?}"));
        }
    }
    for &y in &ctx.in_r2 {
        for z in [s, t, u, v] {
            if !hits(d, &l, e(y, z)).is_subset(&set(&[e(u, w), e(v, w)])) {
                return fail(format!("edge {y}-{z}"));
            }
        }
        if hits(d, &l, e(y, w)) != set(&[e(s, t)]) {
            return fail(format!("edge {y}-w"));
        }
    }
    let j = l.vertices();
    let others: Vec<usize> = (0..d.n()).filter(|x| !j.contains(x)).collect();
    for (i, &a) in others.iter().enumerate() {
        for &b in &others[i + 1..] {
            let h = hits(d, &l, e(a, b));
            for (tri, key) in [([s, t, w], e(s, t)), ([s, u, v], e(s, u)), ([t, u, v], e(t, v))] {
                let on: Vec<&Edge> = h.iter().filter(|f| tri.contains(&f.lo()) && tri.contains(&f.hi())).collect();
                if !on.is_empty() && !on.contains(&&key) {
                    return fail(format!("edge {a}-{b} crosses {tri:?} avoiding {key}"));
                }
            }
        }
    }
    Ok(())
}

fn check_routings_k55(d: &Drawing, ctx: &ReductionContext) -> Result<(), RerouteError> {
    let fail = |what: String| Err(violated("routings", what));
    for (lab, side, region) in [(ctx.labels, &ctx.in_r1, &ctx.r1), (ctx.labels.theta(), &ctx.in_r2, &ctx.r2)] {
        let e = Labels::e;
        let Labels { s, t, u, v, w } = lab;
        for &x in side {
            if !hits(d, &lab, e(x, u)).is_empty() || !hits(d, &lab, e(x, s)).is_empty() {
                return fail(format!("edges from {x} to u and {s}"));
            }
            if !hits(d, &lab, e(x, v)).is_subset(&set(&[e(u, w)])) || !hits(d, &lab, e(x, w)).is_subset(&set(&[e(s, v), e(t, v)])) {
                return fail(format!("edges from {x} to {v}, {w}"));
            }
            let xt = hits(d, &lab, e(x, t));
            if !xt.is_empty() && xt != set(&[e(s, v), e(s, w), e(s, u)]) {
                return fail(format!("edge {x}-{t} crosses {xt:?}"));
            }
            for &y in side.iter().filter(|&&y| y > x) {
                if !edge_within(d, e(x, y), region) {
                    return fail(format!("edge {x}-{y} leaves its region"));
                }
            }
        }
    }
    Ok(())
}

/// Labels the `K_5`, computes the two regions and checks the routing
/// claims that the reduction relies on.
pub fn build_context(d: &Drawing, s: &[usize]) -> Result<ReductionContext, RerouteError> {
    let vertices = sorted5(s)?;
    let hyp = check_hypothesis(d, &vertices)?;
    if !hyp.holds {
        let (h, k) = hyp.violation.expect("a failing verdict has a witness");
        return Err(RerouteError::HypothesisFailed(format!("{k:?} is also non-convex inside {h:?}")));
    }
    let kind = hyp.class;
    let labels = *labellings(d, &vertices, kind)?
        .first()
        .ok_or_else(|| violated("labelling", format!("no labelling of {vertices:?} matches")))?;
    let cross_of = |l: &Labels| d.crossing_of(Edge::new(l.s, l.u), Edge::new(l.t, l.v)).expect("su crosses tv");
    let ctx = match kind {
        K5Class::TildeK5_3 => {
            check_empty_sides(d, &labels)?;
            let cross = cross_of(&labels);
            let (r1, r2) = regions_k53(d, &labels, cross)?;
            let (in_r1, in_r2) = split(d, &vertices, &r1, &r2);
            let ctx = ReductionContext { vertices, labels, kind, r1, r2, in_r1, in_r2, cross, theta_applied: false };
            check_routings_k53(d, &ctx)?;
            ctx
        }
        _ => {
            let (r1, r2) = regions_k55(d, &labels)?;
            let (in_r1, in_r2) = split(d, &vertices, &r1, &r2);
            let mut ctx = ReductionContext { vertices, labels, kind, cross: cross_of(&labels), r1, r2, in_r1, in_r2, theta_applied: false };
            if ctx.in_r1.len() > ctx.in_r2.len() {
                let labels = labels.theta();
                ctx = ReductionContext {
                    labels,
                    cross: cross_of(&labels),
                    r1: ctx.r2,
                    r2: ctx.r1,
                    in_r1: ctx.in_r2,
                    in_r2: ctx.in_r1,
                    theta_applied: true,
                    ..ctx
                };
            }
            check_routings_k55(d, &ctx)?;
            ctx
        }
    };
    let placed = ctx.in_r1.len() + ctx.in_r2.len();
    if placed + 5 != d.n() {
        return Err(violated("regions", format!("{} vertices lie outside both regions", d.n() - 5 - placed)));
    }
    Ok(ctx)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionCase {
    /// `st` moved around `w`.
    TildeThreeFewerLeft,
    /// `su` moved around `v`.
    TildeThreeFewerRight,
    /// `xt` moved around `s`.
    TildeFiveDirect,
    /// `tv` moved around `s`, then the three-crossing reduction.
    TildeFiveTwoStage,
}

impl ReductionCase {
    pub fn name(self) -> &'static str {
        match self {
            ReductionCase::TildeThreeFewerLeft => "tilde-K5-3, r1 <= r2: st around w",
            ReductionCase::TildeThreeFewerRight => "tilde-K5-3, r1 > r2: su around v",
            ReductionCase::TildeFiveDirect => "tilde-K5-5: xt around s",
            ReductionCase::TildeFiveTwoStage => "tilde-K5-5: tv around s, then tilde-K5-3",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RerouteStep {
    pub edge: Edge,
    pub via: usize,
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub case: ReductionCase,
    pub context: ReductionContext,
    pub steps: Vec<RerouteStep>,
    pub removed: Vec<(Edge, Edge)>,
    pub added: Vec<(Edge, Edge)>,
    pub crossings_before: usize,
    pub crossings_after: usize,
    /// The guaranteed drop.
    pub bound: usize,
}

fn diff(before: &Drawing, after: &Drawing) -> (Vec<(Edge, Edge)>, Vec<(Edge, Edge)>) {
    let a: BTreeSet<(Edge, Edge)> = before.crossing_pairs().into_iter().collect();
    let b: BTreeSet<(Edge, Edge)> = after.crossing_pairs().into_iter().collect();
    (a.difference(&b).copied().collect(), b.difference(&a).copied().collect())
}

fn pair(a: Edge, b: Edge) -> (Edge, Edge) {
    (a.min(b), a.max(b))
}

fn reduce_k53(d: &Drawing, ctx: &ReductionContext) -> Result<(Drawing, ReductionCase, RerouteStep), RerouteError> {
    let e = Labels::e;
    let Labels { s, t, u, v, w } = ctx.labels;
    if ctx.in_r1.len() <= ctx.in_r2.len() {
        let (out, side) = reroute_avoiding(d, e(s, t), w, &[e(w, u), e(w, v)])?;
        let (removed, _) = diff(d, &out);
        let mut must = alloc::vec![pair(e(s, t), e(w, u)), pair(e(s, t), e(w, v))];
        must.extend(ctx.in_r2.iter().map(|&z| pair(e(z, w), e(s, t))));
        if let Some(p) = must.iter().find(|p| !removed.contains(p)) {
            return Err(violated("routings", format!("crossing {} x {} survives the reroute", p.0, p.1)));
        }
        Ok((out, ReductionCase::TildeThreeFewerLeft, RerouteStep { edge: e(s, t), via: w, side }))
    } else {
        let su = e(s, u);
        let side = [Side::Left, Side::Right]
            .into_iter()
            .find(|&side| corridor(d, su.lo(), su.hi(), v, side).contains(&e(v, w)))
            .ok_or_else(|| RerouteError::NoSide { via: v, avoid: Vec::new() })?;
        let out = reroute_along_path(d, su, v, side)?;
        Ok((out, ReductionCase::TildeThreeFewerRight, RerouteStep { edge: su, via: v, side }))
    }
}

/// Applies the reduction to the non-convex `K_5` on `s`.
pub fn apply_crossing_reduction(d: &Drawing, s: &[usize]) -> Result<(Drawing, ReductionReport), RerouteError> {
    apply_bounded(d, s, 3)
}

fn apply_bounded(d: &Drawing, s: &[usize], depth: usize) -> Result<(Drawing, ReductionReport), RerouteError> {
    if depth == 0 {
        return Err(violated("recursion", "depth guard reached".into()));
    }
    let ctx = build_context(d, s)?;
    let e = Labels::e;
    let before = d.crossing_count();
    let (out, case, steps, bound) = match ctx.kind {
        K5Class::TildeK5_3 => {
            let (out, case, step) = reduce_k53(d, &ctx)?;
            (out, case, alloc::vec![step], 2)
        }
        _ => {
            let Labels { s, t, u, v, w } = ctx.labels;
            let bound = if d.n() % 2 == 0 { 5 } else { 4 };
            let sv_order = d.curve_from(e(s, v), s);
            let best = ctx
                .in_r1
                .iter()
                .filter(|&&x| hits(d, &ctx.labels, e(x, t)) == set(&[e(s, v), e(s, w), e(s, u)]))
                .map(|&x| {
                    let c = d.crossing_of(e(x, t), e(s, v)).expect("xt crosses sv");
                    (sv_order.iter().position(|&y| y == c).expect("on sv"), x)
                })
                .min();
            if let Some((_, x)) = best {
                let (a, b) = sides_of_triangle(d, [s, x, t]);
                let delta = if [v, u, w].iter().any(|y| a.inside.contains(y)) { b } else { a };
                if let Some(&y) = delta.inside.first() {
                    return Err(violated("closest crossing", format!("vertex {y} lies inside the triangle {s} {x} {t}")));
                }
                let (out, side) = reroute_avoiding(d, e(x, t), s, &[e(s, v), e(s, w), e(s, u)])?;
                (out, ReductionCase::TildeFiveDirect, alloc::vec![RerouteStep { edge: e(x, t), via: s, side }], bound)
            } else {
                let mut chosen = None;
                for side in [Side::Left, Side::Right] {
                    let Ok(mid) = reroute_along_path(d, e(t, v), s, side) else { continue };
                    if mid.crossing_count() >= before || class_of(&mid, &ctx.vertices)? != K5Class::TildeK5_3 {
                        continue;
                    }
                    chosen = Some((mid, side));
                    break;
                }
                let (mid, side) = chosen.ok_or_else(|| violated("first stage", "no side of t-s-v leaves a tilde-K5-3".into()))?;
                if !check_hypothesis(&mid, &ctx.vertices)?.holds {
                    return Err(violated("first stage", "the hypothesis fails after moving tv".into()));
                }
                let (out, inner) = apply_bounded(&mid, &ctx.vertices, depth - 1)?;
                let mut steps = alloc::vec![RerouteStep { edge: e(t, v), via: s, side }];
                steps.extend(inner.steps);
                (out, ReductionCase::TildeFiveTwoStage, steps, bound)
            }
        }
    };
    let after = out.crossing_count();
    let (removed, added) = diff(d, &out);
    if before + added.len() != after + removed.len() {
        return Err(violated("bookkeeping", format!("{before} - {} + {} != {after}", removed.len(), added.len())));
    }
    if after + bound > before {
        return Err(violated("bound", format!("{before} crossings became {after}, expected a drop of {bound}")));
    }
    Ok((out, ReductionReport { case, context: ctx, steps, removed, added, crossings_before: before, crossings_after: after, bound }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexity::is_convex;
    use crate::fixtures::{modified_tc8, natural, tilde_k5_3, tilde_k5_5};
    use crate::map::counting_identity_check;

    const FIRST: [usize; 5] = [1, 2, 3, 4, 7];
    const SECOND: [usize; 5] = [0, 1, 4, 5, 6];

    fn check_output(before: &Drawing, out: &Drawing, r: &ReductionReport) {
        assert_eq!(out.n(), before.n());
        assert_eq!(r.crossings_after, out.crossing_count());
        assert_eq!(r.crossings_before - r.removed.len() + r.added.len(), r.crossings_after);
        assert!(r.crossings_before - r.crossings_after >= r.bound);
        if out.n() >= 5 {
            assert!(counting_identity_check(out).unwrap().holds());
        }
    }

    #[test]
    fn modified_tc8_has_exactly_the_two_bad_k5s() {
        let d = modified_tc8();
        let report = is_convex(&d).unwrap();
        let bad: Vec<[usize; 5]> = report.forbidden_k5s.iter().map(|(s, _)| *s).collect();
        assert_eq!(bad, alloc::vec![SECOND, FIRST]);
        for s in [FIRST, SECOND] {
            let h = check_hypothesis(&d, &s).unwrap();
            assert!(h.holds);
            assert_eq!(h.class, K5Class::TildeK5_3);
        }
    }

    #[test]
    fn reduce_modified_tc8() {
        let d = modified_tc8();
        for s in [FIRST, SECOND] {
            let ctx = build_context(&d, &s).unwrap();
            assert_eq!(ctx.in_r1.len() + ctx.in_r2.len(), 3);
            let (out, r) = apply_crossing_reduction(&d, &s).unwrap();
            check_output(&d, &out, &r);
        }
    }

    #[test]
    fn lone_tilde_k5s() {
        let d = tilde_k5_3();
        let ctx = build_context(&d, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(ctx.labels, Labels { s: 0, t: 1, u: 2, v: 3, w: 4 });
        assert!(ctx.in_r1.is_empty() && ctx.in_r2.is_empty());
        let (out, r) = apply_crossing_reduction(&d, &[0, 1, 2, 3, 4]).unwrap();
        check_output(&d, &out, &r);
        assert!(out.crossing_count() <= 1);

        let d = tilde_k5_5();
        let ctx = build_context(&d, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(ctx.labels, Labels { s: 0, t: 1, u: 2, v: 3, w: 4 });
        let (out, r) = apply_crossing_reduction(&d, &[0, 1, 2, 3, 4]).unwrap();
        check_output(&d, &out, &r);
        assert_eq!(r.case, ReductionCase::TildeFiveTwoStage);
        assert!(out.crossing_count() <= 1);
    }

    #[test]
    fn convex_k5_is_refused() {
        assert!(matches!(check_hypothesis(&natural(6), &[0, 1, 2, 3, 4]), Err(RerouteError::NotForbiddenK5(_))));
    }

    #[test]
    fn overlapping_bad_k5s_fail_the_hypothesis() {
        use crate::map::all_edges;
        let base = natural(7);
        let moves: Vec<(Edge, usize, Side)> = all_edges(7)
            .flat_map(|e| (0..7).filter(move |&w| !e.contains(w)).flat_map(move |w| [(e, w, Side::Left), (e, w, Side::Right)]))
            .collect();
        let bad_k5s = |d: &Drawing| -> Vec<Vec<usize>> { subsets(7, 5).into_iter().filter(|k| !is_convex_fpp(&d.induce(k).unwrap())).collect() };
        let overlapping = |bad: &[Vec<usize>]| bad.iter().any(|a| bad.iter().any(|b| a != b && a.iter().filter(|x| b.contains(x)).count() >= 3));
        let found = moves.iter().filter_map(|&(e, w, side)| reroute_along_path(&base, e, w, side).ok()).find_map(|d1| {
            moves.iter().find_map(|&(e, w, side)| {
                let d = reroute_along_path(&d1, e, w, side).ok()?;
                let bad = bad_k5s(&d);
                overlapping(&bad).then(|| (d, [bad[0][0], bad[0][1], bad[0][2], bad[0][3], bad[0][4]]))
            })
        });
        let (d, s) = found.expect("two reroutes of a natural K7 make overlapping bad K5s");
        let h = check_hypothesis(&d, &s).unwrap();
        assert!(!h.holds);
        let (seven, other) = h.violation.unwrap();
        assert!(s.iter().all(|x| seven.contains(x)) && other.iter().all(|x| seven.contains(x)));
        assert!(matches!(apply_crossing_reduction(&d, &s), Err(RerouteError::HypothesisFailed(_))));
    }
}
