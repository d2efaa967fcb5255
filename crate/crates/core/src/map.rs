//! Planarized combinatorial maps of good drawings of `K_n`.
//!
//! A drawing is stored as its planarization: the `n` vertices plus one node
//! per crossing, with every edge of `K_n` cut into segments at its crossings.
//! Each segment carries two darts. Rotations list, for every node, the darts
//! leaving it in counterclockwise order; a dart is named by the vertex at the
//! far end of the edge it runs along, which is unambiguous because a vertex
//! has one edge to every other vertex and a crossing node sees four distinct
//! endpoints.
//!
//! Faces are traced with `next = rot_next(reverse(d))`, which keeps the face
//! on the right-hand side of every dart.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Goodness, MapError};

/// An unordered vertex pair, stored with `lo < hi`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    lo: usize,
    hi: usize,
}

impl Edge {
    /// Panics if `a == b`.
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a != b, "an edge needs two distinct endpoints");
        if a < b {
            Edge { lo: a, hi: b }
        } else {
            Edge { lo: b, hi: a }
        }
    }

    pub fn lo(self) -> usize {
        self.lo
    }

    pub fn hi(self) -> usize {
        self.hi
    }

    pub fn ends(self) -> [usize; 2] {
        [self.lo, self.hi]
    }

    pub fn contains(self, v: usize) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoint that is not `v`.
    pub fn other(self, v: usize) -> usize {
        if self.lo == v {
            self.hi
        } else {
            debug_assert_eq!(self.hi, v);
            self.lo
        }
    }

    pub fn is_adjacent(self, f: Edge) -> bool {
        self.contains(f.lo) || self.contains(f.hi)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CrossingId(pub usize);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FaceId(pub usize);

/// A node of the planarization.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Node {
    Vertex(usize),
    Crossing(CrossingId),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Vertex(v) => write!(f, "v{v}"),
            Node::Crossing(c) => write!(f, "c{}", c.0),
        }
    }
}

/// Unvalidated description of a drawing, as read from an interchange file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawDrawing {
    pub n: usize,
    pub edges: Vec<RawEdge>,
    pub rotations: Vec<RawRotation>,
}

/// One edge curve: its endpoints and the crossing identifiers met when
/// walking from `ends[0]` to `ends[1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawEdge {
    pub ends: [usize; 2],
    pub crossings: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RawNode {
    Vertex(usize),
    Crossing(usize),
}

/// Counterclockwise rotation at a node, each dart named by the vertex it
/// heads toward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawRotation {
    pub node: RawNode,
    pub toward: Vec<usize>,
}

#[derive(Clone, Debug)]
struct CrossingNode {
    edges: [Edge; 2],
    /// Index of this crossing in each edge's crossing sequence.
    pos: [usize; 2],
    /// Counterclockwise, named by endpoint vertex.
    rotation: [usize; 4],
}

/// A face of the planarization.
#[derive(Clone, Debug)]
pub struct Face {
    darts: Vec<usize>,
    vertices: Vec<usize>,
}

impl Face {
    /// Boundary walk as dart indices.
    pub fn darts(&self) -> &[usize] {
        &self.darts
    }

    /// Vertices of `K_n` on the boundary, ascending.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }
}

/// A validated good drawing of `K_n`. Immutable after construction.
#[derive(Clone, Debug)]
pub struct Drawing {
    n: usize,
    curves: Vec<Vec<CrossingId>>,
    crossings: Vec<CrossingNode>,
    vertex_rotation: Vec<Vec<usize>>,
    pair_crossing: Vec<Option<CrossingId>>,
    seg_base: Vec<usize>,
    seg_edge: Vec<usize>,
    rot_next: Vec<usize>,
    rot_prev: Vec<usize>,
    dart_face: Vec<FaceId>,
    faces: Vec<Face>,
}

/// Index of `e` among the edges of `K_n`, in lexicographic order.
pub fn edge_index(n: usize, e: Edge) -> usize {
    let (a, b) = (e.lo, e.hi);
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

pub fn edge_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// All edges of `K_n` in index order.
pub fn all_edges(n: usize) -> impl Iterator<Item = Edge> {
    (0..n).flat_map(move |a| (a + 1..n).map(move |b| Edge::new(a, b)))
}

impl Drawing {
    pub fn from_raw(raw: &RawDrawing) -> Result<Drawing, MapError> {
        let n = raw.n;
        if n < 3 {
            return Err(MapError::TooFewVertices(n));
        }
        let ecount = edge_count(n);

        // Edge curves, oriented low to high, with raw crossing ids.
        let mut raw_curves: Vec<Option<Vec<usize>>> = vec![None; ecount];
        for re in &raw.edges {
            let [a, b] = re.ends;
            if a >= n || b >= n {
                return Err(MapError::VertexOutOfRange { vertex: a.max(b), n });
            }
            if a == b {
                return Err(MapError::SelfLoop(a));
            }
            let e = Edge::new(a, b);
            let idx = edge_index(n, e);
            if raw_curves[idx].is_some() {
                return Err(MapError::DuplicateEdge(e));
            }
            let mut seq = re.crossings.clone();
            if a > b {
                seq.reverse();
            }
            raw_curves[idx] = Some(seq);
        }
        let mut raw_seq = Vec::with_capacity(ecount);
        for (idx, c) in raw_curves.into_iter().enumerate() {
            match c {
                Some(seq) => raw_seq.push(seq),
                None => return Err(MapError::MissingEdge(edge_at(n, idx))),
            }
        }

        // Dense crossing ids in order of first appearance along the edges.
        let mut dense: alloc::collections::BTreeMap<usize, usize> = Default::default();
        let mut owners: Vec<Vec<(Edge, usize)>> = Vec::new();
        for (idx, seq) in raw_seq.iter().enumerate() {
            let e = edge_at(n, idx);
            for (pos, &rc) in seq.iter().enumerate() {
                let id = *dense.entry(rc).or_insert_with(|| {
                    owners.push(Vec::new());
                    owners.len() - 1
                });
                if owners[id].iter().any(|&(f, _)| f == e) {
                    return Err(Goodness::SelfCrossing { edge: e, crossing: rc }.into());
                }
                owners[id].push((e, pos));
            }
        }
        let mut crossings = Vec::with_capacity(owners.len());
        let mut pair_crossing = vec![None; ecount * ecount];
        let raw_of: Vec<usize> = {
            let mut v = vec![0; owners.len()];
            for (&r, &d) in &dense {
                v[d] = r;
            }
            v
        };
        for (id, own) in owners.iter().enumerate() {
            if own.len() != 2 {
                return Err(Goodness::CrossingArity { crossing: raw_of[id], edges: own.len() }.into());
            }
            let (e, pe) = own[0];
            let (f, pf) = own[1];
            if e.is_adjacent(f) {
                return Err(Goodness::AdjacentCrossing { first: e, second: f, crossing: raw_of[id] }.into());
            }
            let (ie, jf) = (edge_index(n, e), edge_index(n, f));
            if pair_crossing[ie * ecount + jf].is_some() {
                return Err(Goodness::RepeatedCrossing { first: e, second: f }.into());
            }
            pair_crossing[ie * ecount + jf] = Some(CrossingId(id));
            pair_crossing[jf * ecount + ie] = Some(CrossingId(id));
            crossings.push(CrossingNode { edges: [e, f], pos: [pe, pf], rotation: [usize::MAX; 4] });
        }
        let curves: Vec<Vec<CrossingId>> = raw_seq
            .iter()
            .map(|seq| seq.iter().map(|rc| CrossingId(dense[rc])).collect())
            .collect();

        // Rotations.
        let mut vertex_rotation: Vec<Option<Vec<usize>>> = vec![None; n];
        let mut seen_crossing = vec![false; crossings.len()];
        for rot in &raw.rotations {
            match rot.node {
                RawNode::Vertex(v) => {
                    if v >= n {
                        return Err(MapError::VertexOutOfRange { vertex: v, n });
                    }
                    if vertex_rotation[v].is_some() {
                        return Err(MapError::InconsistentRotation { node: Node::Vertex(v), reason: "listed twice" });
                    }
                    let mut seen = vec![false; n];
                    if rot.toward.len() != n - 1 {
                        return Err(MapError::InconsistentRotation { node: Node::Vertex(v), reason: "must list every other vertex once" });
                    }
                    for &w in &rot.toward {
                        if w >= n || w == v || seen[w] {
                            return Err(MapError::InconsistentRotation { node: Node::Vertex(v), reason: "must list every other vertex once" });
                        }
                        seen[w] = true;
                    }
                    vertex_rotation[v] = Some(rot.toward.clone());
                }
                RawNode::Crossing(rc) => {
                    let Some(&id) = dense.get(&rc) else {
                        return Err(MapError::UnknownCrossing(rc));
                    };
                    let node = Node::Crossing(CrossingId(id));
                    if seen_crossing[id] {
                        return Err(MapError::InconsistentRotation { node, reason: "listed twice" });
                    }
                    seen_crossing[id] = true;
                    if rot.toward.len() != 4 {
                        return Err(MapError::InconsistentRotation { node, reason: "a crossing has exactly four darts" });
                    }
                    let [e, f] = crossings[id].edges;
                    let r = [rot.toward[0], rot.toward[1], rot.toward[2], rot.toward[3]];
                    let mut ends = [e.lo, e.hi, f.lo, f.hi];
                    let mut got = r;
                    ends.sort_unstable();
                    got.sort_unstable();
                    if ends != got {
                        return Err(MapError::InconsistentRotation { node, reason: "darts must head to the four endpoints of the crossing edges" });
                    }
                    let along_e = |x: usize| e.contains(x);
                    if along_e(r[0]) != along_e(r[2]) || along_e(r[1]) != along_e(r[3]) || along_e(r[0]) == along_e(r[1]) {
                        return Err(MapError::InconsistentRotation { node, reason: "the two edges must alternate" });
                    }
                    crossings[id].rotation = r;
                }
            }
        }
        let mut vrot = Vec::with_capacity(n);
        for (v, r) in vertex_rotation.into_iter().enumerate() {
            match r {
                Some(r) => vrot.push(r),
                None => return Err(MapError::MissingRotation(Node::Vertex(v))),
            }
        }
        if let Some(id) = seen_crossing.iter().position(|s| !s) {
            return Err(MapError::MissingRotation(Node::Crossing(CrossingId(id))));
        }

        let mut d = Drawing {
            n,
            curves,
            crossings,
            vertex_rotation: vrot,
            pair_crossing,
            seg_base: Vec::new(),
            seg_edge: Vec::new(),
            rot_next: Vec::new(),
            rot_prev: Vec::new(),
            dart_face: Vec::new(),
            faces: Vec::new(),
        };
        d.derive()?;
        Ok(d)
    }

    fn derive(&mut self) -> Result<(), MapError> {
        let ecount = edge_count(self.n);
        let mut seg_base = Vec::with_capacity(ecount + 1);
        let mut seg_edge = Vec::new();
        let mut total = 0;
        for (idx, c) in self.curves.iter().enumerate() {
            seg_base.push(total);
            total += c.len() + 1;
            seg_edge.extend(core::iter::repeat(idx).take(c.len() + 1));
        }
        seg_base.push(total);
        self.seg_base = seg_base;
        self.seg_edge = seg_edge;

        let darts = 2 * total;
        let mut rot_next = vec![usize::MAX; darts];
        let mut rot_prev = vec![usize::MAX; darts];
        for v in 0..self.n {
            let ds: Vec<usize> = self.vertex_rotation[v].iter().map(|&w| self.vertex_dart(v, w)).collect();
            for i in 0..ds.len() {
                let j = (i + 1) % ds.len();
                rot_next[ds[i]] = ds[j];
                rot_prev[ds[j]] = ds[i];
            }
        }
        for c in 0..self.crossings.len() {
            let rot = self.crossings[c].rotation;
            let ds: Vec<usize> = rot.iter().map(|&w| self.crossing_dart(CrossingId(c), w)).collect();
            for i in 0..4 {
                let j = (i + 1) % 4;
                rot_next[ds[i]] = ds[j];
                rot_prev[ds[j]] = ds[i];
            }
        }
        debug_assert!(rot_next.iter().all(|&x| x != usize::MAX));
        self.rot_next = rot_next;
        self.rot_prev = rot_prev;

        // Faces.
        let mut dart_face = vec![FaceId(usize::MAX); darts];
        let mut faces = Vec::new();
        for start in 0..darts {
            if dart_face[start].0 != usize::MAX {
                continue;
            }
            let fid = FaceId(faces.len());
            let mut walk = Vec::new();
            let mut verts = Vec::new();
            let mut d = start;
            loop {
                dart_face[d] = fid;
                walk.push(d);
                if let Node::Vertex(v) = self.tail(d) {
                    verts.push(v);
                }
                d = self.rot_next[d ^ 1];
                if d == start {
                    break;
                }
                if dart_face[d].0 != usize::MAX {
                    return Err(MapError::InconsistentRotation { node: self.tail(d), reason: "face tracing does not close up" });
                }
            }
            verts.sort_unstable();
            verts.dedup();
            faces.push(Face { darts: walk, vertices: verts });
        }
        self.dart_face = dart_face;
        self.faces = faces;

        // Connectivity of the planarization.
        let nodes = self.n + self.crossings.len();
        let mut seen = vec![false; nodes];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(0usize);
        let mut reached = 1;
        while let Some(x) = queue.pop_front() {
            for d in self.darts_at(self.node_of_index(x)) {
                let y = self.node_index(self.head(d));
                if !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    queue.push_back(y);
                }
            }
        }
        if reached != nodes {
            return Err(MapError::Disconnected);
        }
        let euler = nodes as isize - total as isize + self.faces.len() as isize;
        if euler != 2 {
            return Err(MapError::EulerViolation { nodes, segments: total, faces: self.faces.len() });
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Every crossing as its pair of edges, sorted, each pair once.
    pub fn crossing_pairs(&self) -> Vec<(Edge, Edge)> {
        let mut v: Vec<(Edge, Edge)> = self
            .crossings
            .iter()
            .map(|c| {
                let [e, f] = c.edges;
                if e < f {
                    (e, f)
                } else {
                    (f, e)
                }
            })
            .collect();
        v.sort_unstable();
        v
    }

    pub fn crossing_of(&self, e: Edge, f: Edge) -> Option<CrossingId> {
        let ec = edge_count(self.n);
        self.pair_crossing[edge_index(self.n, e) * ec + edge_index(self.n, f)]
    }

    pub fn cross(&self, e: Edge, f: Edge) -> bool {
        self.crossing_of(e, f).is_some()
    }

    /// The two edges meeting at a crossing.
    pub fn crossing_edges(&self, c: CrossingId) -> [Edge; 2] {
        self.crossings[c.0].edges
    }

    /// Counterclockwise rotation at a crossing, by endpoint vertex.
    pub fn crossing_rotation(&self, c: CrossingId) -> [usize; 4] {
        self.crossings[c.0].rotation
    }

    /// Crossings along `e` from `e.lo()` to `e.hi()`.
    pub fn curve(&self, e: Edge) -> &[CrossingId] {
        &self.curves[edge_index(self.n, e)]
    }

    /// Crossings along `e` in the direction starting at vertex `from`.
    pub fn curve_from(&self, e: Edge, from: usize) -> Vec<CrossingId> {
        let mut c = self.curve(e).to_vec();
        if from == e.hi {
            c.reverse();
        }
        c
    }

    pub fn edges_crossing(&self, e: Edge) -> Vec<Edge> {
        self.curve(e).iter().map(|&c| self.partner(c, e)).collect()
    }

    /// The other edge at crossing `c`.
    pub fn partner(&self, c: CrossingId, e: Edge) -> Edge {
        let [a, b] = self.crossings[c.0].edges;
        if a == e {
            b
        } else {
            a
        }
    }

    /// Counterclockwise neighbour order at vertex `v`.
    pub fn vertex_rotation(&self, v: usize) -> &[usize] {
        &self.vertex_rotation[v]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f.0]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn segment_count(&self) -> usize {
        self.seg_edge.len()
    }

    pub fn dart_count(&self) -> usize {
        2 * self.seg_edge.len()
    }

    pub fn node_count(&self) -> usize {
        self.n + self.crossings.len()
    }

    /// Nodes are indexed with vertices first, then crossings.
    pub fn node_index(&self, node: Node) -> usize {
        match node {
            Node::Vertex(v) => v,
            Node::Crossing(c) => self.n + c.0,
        }
    }

    pub fn node_of_index(&self, i: usize) -> Node {
        if i < self.n {
            Node::Vertex(i)
        } else {
            Node::Crossing(CrossingId(i - self.n))
        }
    }

    /// Edge of `K_n` that dart `d` runs along.
    pub fn dart_edge(&self, d: usize) -> Edge {
        edge_at(self.n, self.seg_edge[d / 2])
    }

    fn node_on_curve(&self, edge_idx: usize, k: usize) -> Node {
        let e = edge_at(self.n, edge_idx);
        let len = self.curves[edge_idx].len();
        if k == 0 {
            Node::Vertex(e.lo)
        } else if k == len + 1 {
            Node::Vertex(e.hi)
        } else {
            Node::Crossing(self.curves[edge_idx][k - 1])
        }
    }

    pub fn tail(&self, d: usize) -> Node {
        let seg = d / 2;
        let idx = self.seg_edge[seg];
        let k = seg - self.seg_base[idx];
        if d % 2 == 0 {
            self.node_on_curve(idx, k)
        } else {
            self.node_on_curve(idx, k + 1)
        }
    }

    pub fn head(&self, d: usize) -> Node {
        self.tail(d ^ 1)
    }

    /// Vertex that the edge of dart `d` reaches when followed forward.
    pub fn dart_toward(&self, d: usize) -> usize {
        let e = self.dart_edge(d);
        if d % 2 == 0 {
            e.hi
        } else {
            e.lo
        }
    }

    pub fn reverse(d: usize) -> usize {
        d ^ 1
    }

    pub fn rot_next(&self, d: usize) -> usize {
        self.rot_next[d]
    }

    pub fn rot_prev(&self, d: usize) -> usize {
        self.rot_prev[d]
    }

    /// Face on the right-hand side of dart `d`.
    pub fn dart_face(&self, d: usize) -> FaceId {
        self.dart_face[d]
    }

    /// Dart leaving vertex `v` along edge `vw`.
    pub fn vertex_dart(&self, v: usize, w: usize) -> usize {
        let e = Edge::new(v, w);
        let idx = edge_index(self.n, e);
        if v < w {
            2 * self.seg_base[idx]
        } else {
            2 * (self.seg_base[idx] + self.curves[idx].len()) + 1
        }
    }

    /// Dart leaving crossing `c` toward endpoint vertex `w`.
    pub fn crossing_dart(&self, c: CrossingId, w: usize) -> usize {
        let node = &self.crossings[c.0];
        let slot = if node.edges[0].contains(w) { 0 } else { 1 };
        let e = node.edges[slot];
        debug_assert!(e.contains(w));
        let idx = edge_index(self.n, e);
        let pos = node.pos[slot];
        if w == e.hi {
            2 * (self.seg_base[idx] + pos + 1)
        } else {
            2 * (self.seg_base[idx] + pos) + 1
        }
    }

    /// Darts leaving `node`, counterclockwise.
    pub fn darts_at(&self, node: Node) -> Vec<usize> {
        match node {
            Node::Vertex(v) => self.vertex_rotation[v].iter().map(|&w| self.vertex_dart(v, w)).collect(),
            Node::Crossing(c) => self.crossings[c.0].rotation.iter().map(|&w| self.crossing_dart(c, w)).collect(),
        }
    }

    /// All darts (both directions) on the segments of `e`.
    pub fn edge_darts(&self, e: Edge) -> core::ops::Range<usize> {
        let idx = edge_index(self.n, e);
        2 * self.seg_base[idx]..2 * self.seg_base[idx + 1]
    }

    /// Faces touching a node, in rotation order, possibly with repeats.
    pub fn faces_around(&self, node: Node) -> Vec<FaceId> {
        self.darts_at(node).into_iter().map(|d| self.dart_face[d]).collect()
    }

    /// Back to an unvalidated description; crossing ids are the dense ids.
    pub fn to_raw(&self) -> RawDrawing {
        let edges = all_edges(self.n)
            .map(|e| RawEdge { ends: e.ends(), crossings: self.curve(e).iter().map(|c| c.0).collect() })
            .collect();
        let mut rotations: Vec<RawRotation> = (0..self.n)
            .map(|v| RawRotation { node: RawNode::Vertex(v), toward: self.vertex_rotation[v].clone() })
            .collect();
        rotations.extend(
            self.crossings
                .iter()
                .enumerate()
                .map(|(i, c)| RawRotation { node: RawNode::Crossing(i), toward: c.rotation.to_vec() }),
        );
        RawDrawing { n: self.n, edges, rotations }
    }

    /// Mirror image: every rotation reversed.
    pub fn reflect(&self) -> Drawing {
        let mut raw = self.to_raw();
        for r in &mut raw.rotations {
            r.toward.reverse();
        }
        Drawing::from_raw(&raw).expect("reflection of a valid drawing is valid")
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Drawing {
        assert_eq!(perm.len(), self.n);
        let mut raw = self.to_raw();
        for e in &mut raw.edges {
            e.ends = [perm[e.ends[0]], perm[e.ends[1]]];
        }
        for r in &mut raw.rotations {
            if let RawNode::Vertex(v) = r.node {
                r.node = RawNode::Vertex(perm[v]);
            }
            for w in &mut r.toward {
                *w = perm[*w];
            }
        }
        Drawing::from_raw(&raw).expect("relabelling a valid drawing keeps it valid")
    }

    /// The subdrawing on `subset`. Vertex `subset[i]` (after sorting)
    /// becomes vertex `i`; crossings with a removed edge are smoothed away.
    pub fn induce(&self, subset: &[usize]) -> Result<Drawing, MapError> {
        let mut s = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() < 3 {
            return Err(MapError::SubsetTooSmall(s.len()));
        }
        if let Some(&v) = s.iter().find(|&&v| v >= self.n) {
            return Err(MapError::VertexOutOfRange { vertex: v, n: self.n });
        }
        let mut map = vec![usize::MAX; self.n];
        for (i, &v) in s.iter().enumerate() {
            map[v] = i;
        }
        let inside = |e: Edge| map[e.lo] != usize::MAX && map[e.hi] != usize::MAX;
        let mut edges = Vec::new();
        let mut kept = vec![false; self.crossings.len()];
        for (i, &a) in s.iter().enumerate() {
            for &b in &s[i + 1..] {
                let e = Edge::new(a, b);
                let cs: Vec<usize> = self
                    .curve(e)
                    .iter()
                    .filter(|&&c| inside(self.partner(c, e)))
                    .map(|c| c.0)
                    .collect();
                for &c in &cs {
                    kept[c] = true;
                }
                edges.push(RawEdge { ends: [map[a], map[b]], crossings: cs });
            }
        }
        let mut rotations = Vec::new();
        for &v in &s {
            rotations.push(RawRotation {
                node: RawNode::Vertex(map[v]),
                toward: self.vertex_rotation[v].iter().filter(|&&w| map[w] != usize::MAX).map(|&w| map[w]).collect(),
            });
        }
        for (c, node) in self.crossings.iter().enumerate() {
            if kept[c] {
                rotations.push(RawRotation {
                    node: RawNode::Crossing(c),
                    toward: node.rotation.iter().map(|&w| map[w]).collect(),
                });
            }
        }
        Drawing::from_raw(&RawDrawing { n: s.len(), edges, rotations })
    }

    /// Crossing count of the subdrawing on `subset`, without building it.
    pub fn crossings_within(&self, subset: &[usize]) -> usize {
        let mut count = 0;
        for (i, &a) in subset.iter().enumerate() {
            for &b in &subset[i + 1..] {
                let e = Edge::new(a, b);
                for (j, &c) in subset.iter().enumerate() {
                    for &d in &subset[j + 1..] {
                        let f = Edge::new(c, d);
                        if e < f && self.cross(e, f) {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    /// Whether the four vertices span a crossing `K_4`.
    pub fn is_crossing_k4(&self, q: [usize; 4]) -> bool {
        let [a, b, c, d] = q;
        self.cross(Edge::new(a, b), Edge::new(c, d))
            || self.cross(Edge::new(a, c), Edge::new(b, d))
            || self.cross(Edge::new(a, d), Edge::new(b, c))
    }

    /// For a crossing `K_4`, its crossing pair; `None` when planar.
    pub fn k4_crossing(&self, q: [usize; 4]) -> Option<(Edge, Edge)> {
        let [a, b, c, d] = q;
        for (e, f) in [
            (Edge::new(a, b), Edge::new(c, d)),
            (Edge::new(a, c), Edge::new(b, d)),
            (Edge::new(a, d), Edge::new(b, c)),
        ] {
            if self.cross(e, f) {
                return Some((e, f));
            }
        }
        None
    }
}

/// Edge with the given index in `K_n`.
pub fn edge_at(n: usize, idx: usize) -> Edge {
    let mut a = 0;
    let mut rest = idx;
    while rest >= n - a - 1 {
        rest -= n - a - 1;
        a += 1;
    }
    Edge::new(a, a + 1 + rest)
}

/// Both sides of the counting identity `(n-4) cr(D) = sum_v cr(D - v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountingIdentity {
    pub left: usize,
    pub right: usize,
}

impl CountingIdentity {
    pub fn holds(&self) -> bool {
        self.left == self.right
    }
}

/// Evaluates both sides from actual vertex-deleted subdrawings.
pub fn counting_identity_check(d: &Drawing) -> Result<CountingIdentity, MapError> {
    let n = d.n();
    if n < 5 {
        return Err(MapError::SubsetTooSmall(n));
    }
    let left = (n - 4) * d.crossing_count();
    let mut right = 0;
    for v in 0..n {
        let rest: Vec<usize> = (0..n).filter(|&x| x != v).collect();
        right += d.induce(&rest)?.crossing_count();
    }
    Ok(CountingIdentity { left, right })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Planar K4: triangle 0 1 2 with 3 inside.
    pub(crate) fn planar_k4() -> RawDrawing {
        RawDrawing {
            n: 4,
            edges: all_edges(4).map(|e| RawEdge { ends: e.ends(), crossings: vec![] }).collect(),
            rotations: vec![
                RawRotation { node: RawNode::Vertex(0), toward: vec![1, 3, 2] },
                RawRotation { node: RawNode::Vertex(1), toward: vec![2, 3, 0] },
                RawRotation { node: RawNode::Vertex(2), toward: vec![0, 3, 1] },
                RawRotation { node: RawNode::Vertex(3), toward: vec![0, 1, 2] },
            ],
        }
    }

    /// Square 0 1 2 3 counterclockwise with diagonals 02 x 13.
    pub(crate) fn crossing_k4() -> RawDrawing {
        let mut edges: Vec<RawEdge> = all_edges(4).map(|e| RawEdge { ends: e.ends(), crossings: vec![] }).collect();
        edges[1].crossings = vec![7]; // 0-2
        edges[4].crossings = vec![7]; // 1-3
        RawDrawing {
            n: 4,
            edges,
            rotations: vec![
                RawRotation { node: RawNode::Vertex(0), toward: vec![1, 2, 3] },
                RawRotation { node: RawNode::Vertex(1), toward: vec![2, 3, 0] },
                RawRotation { node: RawNode::Vertex(2), toward: vec![3, 0, 1] },
                RawRotation { node: RawNode::Vertex(3), toward: vec![0, 1, 2] },
                RawRotation { node: RawNode::Crossing(7), toward: vec![2, 3, 0, 1] },
            ],
        }
    }

    #[test]
    fn edge_indexing_round_trips() {
        for n in 3..10 {
            for (i, e) in all_edges(n).enumerate() {
                assert_eq!(edge_index(n, e), i);
                assert_eq!(edge_at(n, i), e);
            }
        }
    }

    #[test]
    fn planar_k4_has_four_faces() {
        let d = Drawing::from_raw(&planar_k4()).unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.face_count(), 4);
        for f in d.faces() {
            assert_eq!(f.vertices().len(), 3);
        }
    }

    #[test]
    fn crossing_k4_face_count_matches_euler() {
        let d = Drawing::from_raw(&crossing_k4()).unwrap();
        assert_eq!(d.crossing_count(), 1);
        // 5 nodes, 8 segments, so 5 faces: the square's outside and four triangles.
        assert_eq!(d.node_count(), 5);
        assert_eq!(d.segment_count(), 8);
        assert_eq!(d.face_count(), 5);
        assert!(d.faces().iter().any(|f| f.vertices() == [0, 1, 2, 3]));
    }

    #[test]
    fn adjacent_edges_may_not_cross() {
        let mut raw = crossing_k4();
        // Move the crossing from 1-3 onto 0-1, which shares vertex 0 with 0-2.
        raw.edges[4].crossings.clear();
        raw.edges[0].crossings = vec![7];
        match Drawing::from_raw(&raw) {
            Err(MapError::GoodnessViolation(Goodness::AdjacentCrossing { first, second, .. })) => {
                assert_eq!((first.min(second), first.max(second)), (Edge::new(0, 1), Edge::new(0, 2)));
            }
            other => panic!("expected adjacency violation, got {other:?}"),
        }
    }

    #[test]
    fn non_alternating_crossing_rotation_is_rejected() {
        let mut raw = crossing_k4();
        raw.rotations[4].toward = vec![2, 0, 3, 1];
        assert!(matches!(Drawing::from_raw(&raw), Err(MapError::InconsistentRotation { .. })));
    }

    #[test]
    fn wrong_chirality_breaks_euler() {
        let mut raw = crossing_k4();
        raw.rotations[4].toward = vec![2, 1, 0, 3];
        assert!(matches!(Drawing::from_raw(&raw), Err(MapError::EulerViolation { .. } | MapError::InconsistentRotation { .. })));
    }

    #[test]
    fn induce_triangle_of_crossing_k4() {
        let d = Drawing::from_raw(&crossing_k4()).unwrap();
        let t = d.induce(&[0, 1, 3]).unwrap();
        assert_eq!(t.crossing_count(), 0);
        assert_eq!(t.face_count(), 2);
        assert!(matches!(d.induce(&[0, 1]), Err(MapError::SubsetTooSmall(2))));
    }

    #[test]
    fn reflection_and_relabel_stay_valid() {
        let d = Drawing::from_raw(&crossing_k4()).unwrap();
        let r = d.reflect();
        assert_eq!(r.face_count(), d.face_count());
        let p = d.relabel(&[2, 0, 3, 1]);
        assert_eq!(p.crossing_pairs(), vec![(Edge::new(0, 1), Edge::new(2, 3))]);
    }
}
