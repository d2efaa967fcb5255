//! Redrawing one edge alongside a two-edge path.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::RerouteError;
use crate::map::{CrossingId, Drawing, Edge, RawDrawing, RawNode, RawRotation};

/// Which side of the path `x -> w -> y` the new curve follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Edges the new curve would cross, in order from `x`: those crossing
/// `xw` (from `x`), the edges at `w` inside the swept wedge, and those
/// crossing `wy` (from `w`).
pub fn corridor(d: &Drawing, x: usize, y: usize, w: usize, side: Side) -> Vec<Edge> {
    let (xw, wy) = (Edge::new(x, w), Edge::new(w, y));
    let mut out: Vec<Edge> = d.curve_from(xw, x).into_iter().map(|c| d.partner(c, xw)).collect();
    out.extend(wedge(d, x, y, w, side).into_iter().map(|z| Edge::new(w, z)));
    out.extend(d.curve_from(wy, w).into_iter().map(|c| d.partner(c, wy)));
    out
}

/// Neighbours `z` of `w` whose edge `wz` is swept when turning at `w`
/// from `wx` to `wy`, in the order met.
fn wedge(d: &Drawing, x: usize, y: usize, w: usize, side: Side) -> Vec<usize> {
    let rot = d.vertex_rotation(w);
    let k = rot.len();
    let ix = rot.iter().position(|&z| z == x).expect("x is a neighbour of w");
    let mut out = Vec::new();
    let mut i = ix;
    loop {
        i = match side {
            Side::Left => (i + k - 1) % k,
            Side::Right => (i + 1) % k,
        };
        if rot[i] == y {
            break;
        }
        out.push(rot[i]);
    }
    out
}

/// Replaces the curve of `xy` by one running alongside `x -> w -> y` on the
/// given side.
pub fn reroute_along_path(d: &Drawing, e: Edge, via: usize, side: Side) -> Result<Drawing, RerouteError> {
    reroute_oriented(d, e.lo(), e.hi(), via, side)
}

/// Like [`reroute_along_path`] with the path read from `x` to `y`; the
/// sides of `x -> w -> y` and `y -> w -> x` are swapped.
pub fn reroute_oriented(d: &Drawing, x: usize, y: usize, w: usize, side: Side) -> Result<Drawing, RerouteError> {
    let n = d.n();
    if x == y || w == x || w == y || x >= n || y >= n || w >= n {
        return Err(RerouteError::BadRequest(format!("cannot reroute {x}-{y} via {w}")));
    }
    let xy = Edge::new(x, y);
    let crossed = corridor(d, x, y, w, side);
    for (i, &f) in crossed.iter().enumerate() {
        if f.contains(x) || f.contains(y) || crossed[..i].contains(&f) {
            return Err(RerouteError::GoodnessBroken { first: xy, second: f });
        }
    }

    let mut raw = d.to_raw();
    let (xw, wy) = (Edge::new(x, w), Edge::new(w, y));
    let edge_pos = |raw: &RawDrawing, f: Edge| raw.edges.iter().position(|r| Edge::new(r.ends[0], r.ends[1]) == f).expect("every edge is listed");
    let rot_pos = |raw: &RawDrawing, node: RawNode| raw.rotations.iter().position(|r| r.node == node).expect("every node has a rotation");

    // Drop the old curve.
    let old: Vec<usize> = d.curve(xy).iter().map(|c| c.0).collect();
    for &c in &old {
        let f = d.partner(CrossingId(c), xy);
        let fi = edge_pos(&raw, f);
        raw.edges[fi].crossings.retain(|&z| z != c);
    }
    raw.rotations.retain(|r| !matches!(r.node, RawNode::Crossing(c) if old.contains(&c)));
    let xi = edge_pos(&raw, xy);
    raw.edges[xi].crossings.clear();
    for (v, other) in [(x, y), (y, x)] {
        let ri = rot_pos(&raw, RawNode::Vertex(v));
        raw.rotations[ri].toward.retain(|&z| z != other);
    }

    let mut next_id = raw.rotations.iter().filter_map(|r| if let RawNode::Crossing(c) = r.node { Some(c + 1) } else { None }).max().unwrap_or(0);
    let mut new_seq: Vec<usize> = Vec::new();

    // Beside an existing crossing `c` of the path edge `g`, walking toward
    // `ahead` and coming from `behind`.
    let beside = |raw: &mut RawDrawing, g: Edge, c: CrossingId, ahead: usize, behind: usize, next_id: &mut usize| {
        let f = d.partner(c, g);
        let rot = d.crossing_rotation(c);
        let ia = rot.iter().position(|&z| z == ahead).expect("path endpoint at crossing");
        let left_end = rot[(ia + 1) % 4];
        let right_end = rot[(ia + 3) % 4];
        let toward = match side {
            Side::Left => left_end,
            Side::Right => right_end,
        };
        let new_rot: Vec<usize> = rot.iter().map(|&z| if z == ahead { y } else if z == behind { x } else { z }).collect();
        let id = *next_id;
        *next_id += 1;
        let fi = edge_pos(raw, f);
        let oriented_lo_hi = raw.edges[fi].ends[0] < raw.edges[fi].ends[1];
        let seq = &mut raw.edges[fi].crossings;
        let ic = seq.iter().position(|&z| z == c.0).expect("crossing on partner edge");
        // `seq` runs from ends[0] to ends[1].
        let after = (toward == f.hi()) == oriented_lo_hi;
        seq.insert(if after { ic + 1 } else { ic }, id);
        raw.rotations.push(RawRotation { node: RawNode::Crossing(id), toward: new_rot });
        id
    };

    for c in d.curve_from(xw, x) {
        let id = beside(&mut raw, xw, c, w, x, &mut next_id);
        new_seq.push(id);
    }
    for z in wedge(d, x, y, w, side) {
        let wz = Edge::new(w, z);
        let id = next_id;
        next_id += 1;
        let fi = edge_pos(&raw, wz);
        if raw.edges[fi].ends[0] == w {
            raw.edges[fi].crossings.insert(0, id);
        } else {
            raw.edges[fi].crossings.push(id);
        }
        let toward = match side {
            Side::Left => vec![y, z, x, w],
            Side::Right => vec![y, w, x, z],
        };
        raw.rotations.push(RawRotation { node: RawNode::Crossing(id), toward });
        new_seq.push(id);
    }
    for c in d.curve_from(wy, w) {
        let id = beside(&mut raw, wy, c, y, w, &mut next_id);
        new_seq.push(id);
    }

    raw.edges[xi].ends = [x, y];
    raw.edges[xi].crossings = new_seq;
    for (v, other, after) in [(x, y, side == Side::Left), (y, x, side == Side::Right)] {
        let ri = rot_pos(&raw, RawNode::Vertex(v));
        let rot = &mut raw.rotations[ri].toward;
        let iw = rot.iter().position(|&z| z == w).expect("w is a neighbour");
        rot.insert(if after { iw + 1 } else { iw }, other);
    }
    Ok(Drawing::from_raw(&raw)?)
}

/// Reroutes `xy` alongside `x -> w -> y`, choosing a side whose new curve
/// crosses none of `avoid`. Left is tried first.
pub fn reroute_avoiding(d: &Drawing, e: Edge, via: usize, avoid: &[Edge]) -> Result<(Drawing, Side), RerouteError> {
    let mut last = None;
    for side in [Side::Left, Side::Right] {
        let crossed = corridor(d, e.lo(), e.hi(), via, side);
        if crossed.iter().any(|f| avoid.contains(f)) {
            continue;
        }
        match reroute_along_path(d, e, via, side) {
            Ok(out) => return Ok((out, side)),
            Err(err) => last = Some(err),
        }
    }
    Err(last.unwrap_or(RerouteError::NoSide { via, avoid: avoid.to_vec() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::tests::crossing_k4;

    #[test]
    fn uncrossing_a_k4() {
        // Square 0 1 2 3 with diagonals 0-2 x 1-3. Rerouting 0-2 around
        // vertex 3 on the outer side removes the crossing.
        let d = Drawing::from_raw(&crossing_k4()).unwrap();
        let avoid = [Edge::new(1, 3)];
        let (out, _) = reroute_avoiding(&d, Edge::new(0, 2), 3, &avoid).unwrap();
        assert_eq!(out.crossing_count(), 0);
        // The other side sweeps across 1-3 and so keeps one crossing.
        let crossed = corridor(&d, 0, 2, 3, Side::Left);
        let crossed_r = corridor(&d, 0, 2, 3, Side::Right);
        assert!(crossed.is_empty() != crossed_r.is_empty());
    }

    #[test]
    fn adjacent_edges_are_never_crossed() {
        let d = crate::fixtures::natural(5);
        for side in [Side::Left, Side::Right] {
            match reroute_along_path(&d, Edge::new(0, 1), 3, side) {
                Ok(out) => assert_eq!(out.n(), 5),
                Err(RerouteError::GoodnessBroken { first, second }) => {
                    assert_eq!(first, Edge::new(0, 1));
                    assert!(!second.is_adjacent(Edge::new(0, 3)) || second.contains(3));
                }
                Err(e) => panic!("unexpected {e}"),
            }
        }
    }

    #[test]
    fn every_reroute_of_small_drawings_is_valid_or_refused() {
        for d in [crate::fixtures::natural(6), crate::fixtures::tin_can(3), crate::fixtures::tilde_k5_5()] {
            let n = d.n();
            for e in crate::map::all_edges(n) {
                for w in (0..n).filter(|&w| !e.contains(w)) {
                    for side in [Side::Left, Side::Right] {
                        match reroute_along_path(&d, e, w, side) {
                            Ok(out) => {
                                let crossed = corridor(&d, e.lo(), e.hi(), w, side);
                                assert_eq!(out.edges_crossing(e), crossed);
                            }
                            Err(RerouteError::GoodnessBroken { .. }) => {}
                            Err(err) => panic!("reroute {e} via {w} {side:?}: {err}"),
                        }
                    }
                }
            }
        }
    }
}
