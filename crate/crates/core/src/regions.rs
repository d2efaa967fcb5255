//! Face sets and regions of the dual graph cut out by curves.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::map::{Drawing, Edge, FaceId, Node};

/// A set of faces of one drawing, as a bitset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceSet {
    bits: Vec<u64>,
    universe: usize,
}

impl FaceSet {
    pub fn empty(universe: usize) -> Self {
        FaceSet { bits: vec![0; universe.div_ceil(64)], universe }
    }

    pub fn insert(&mut self, f: FaceId) {
        self.bits[f.0 / 64] |= 1 << (f.0 % 64);
    }

    pub fn contains(&self, f: FaceId) -> bool {
        self.bits[f.0 / 64] >> (f.0 % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn is_subset(&self, other: &FaceSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &FaceSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }

    pub fn union_with(&mut self, other: &FaceSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    pub fn complement(&self) -> FaceSet {
        let mut c = FaceSet::empty(self.universe);
        for f in 0..self.universe {
            if !self.contains(FaceId(f)) {
                c.insert(FaceId(f));
            }
        }
        c
    }

    pub fn iter(&self) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.universe).map(FaceId).filter(|&f| self.contains(f))
    }

    /// Smallest face in the set.
    pub fn first(&self) -> Option<FaceId> {
        self.iter().next()
    }
}

/// Connected components of the dual graph when crossing the segments
/// marked in `blocked` (indexed by segment, i.e. dart / 2) is forbidden.
pub fn face_components(d: &Drawing, blocked: &[bool]) -> Vec<FaceSet> {
    let nf = d.face_count();
    let mut comp = vec![usize::MAX; nf];
    let mut out = Vec::new();
    for start in 0..nf {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut set = FaceSet::empty(nf);
        let mut queue = VecDeque::new();
        comp[start] = id;
        queue.push_back(start);
        while let Some(f) = queue.pop_front() {
            set.insert(FaceId(f));
            for &dart in d.face(FaceId(f)).darts() {
                if blocked[dart / 2] {
                    continue;
                }
                let g = d.dart_face(dart ^ 1).0;
                if comp[g] == usize::MAX {
                    comp[g] = id;
                    queue.push_back(g);
                }
            }
        }
        out.push(set);
    }
    out
}

/// Segment mask covering whole edges.
pub fn edge_mask(d: &Drawing, edges: &[Edge]) -> Vec<bool> {
    let mut blocked = vec![false; d.segment_count()];
    for &e in edges {
        for dart in d.edge_darts(e).step_by(2) {
            blocked[dart / 2] = true;
        }
    }
    blocked
}

/// Marks the segments of `e` between the nodes `from` and `to` (both on
/// `e`).
pub fn mark_stretch(d: &Drawing, blocked: &mut [bool], e: Edge, from: Node, to: Node) {
    let pos = |node: Node| -> usize {
        match node {
            Node::Vertex(v) if v == e.lo() => 0,
            Node::Vertex(v) if v == e.hi() => d.curve(e).len() + 1,
            Node::Crossing(c) => 1 + d.curve(e).iter().position(|&x| x == c).expect("crossing lies on the edge"),
            Node::Vertex(v) => panic!("vertex {v} is not an end of {e}"),
        }
    };
    let (a, b) = (pos(from), pos(to));
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    let base = d.edge_darts(e).start / 2;
    for s in a..b {
        blocked[base + s] = true;
    }
}

/// Whether every face around `node` lies in `set`.
pub fn node_in(d: &Drawing, set: &FaceSet, node: Node) -> bool {
    d.faces_around(node).into_iter().all(|f| set.contains(f))
}

/// Whether some face around `node` lies in `set`.
pub fn node_touches(d: &Drawing, set: &FaceSet, node: Node) -> bool {
    d.faces_around(node).into_iter().any(|f| set.contains(f))
}
