//! Exact rational geometry: rectilinear drawings of point sets and drawings
//! whose edges are polygonal curves.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::GeometryError;
use crate::map::{all_edges, Drawing, Edge, RawDrawing, RawEdge, RawNode, RawRotation};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: BigRational,
    pub y: BigRational,
}

impl Point {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point { x: BigRational::from_integer(BigInt::from(x)), y: BigRational::from_integer(BigInt::from(y)) }
    }

    fn sub(&self, o: &Point) -> Point {
        Point { x: &self.x - &o.x, y: &self.y - &o.y }
    }

    fn add_scaled(&self, v: &Point, t: &BigRational) -> Point {
        Point { x: &self.x + &v.x * t, y: &self.y + &v.y * t }
    }
}

fn cross(a: &Point, b: &Point) -> BigRational {
    &a.x * &b.y - &a.y * &b.x
}

fn dot(a: &Point, b: &Point) -> BigRational {
    &a.x * &b.x + &a.y * &b.y
}

/// Sign of the turn `a -> b -> c`: positive when counterclockwise.
pub fn orientation(a: &Point, b: &Point, c: &Point) -> Ordering {
    cross(&b.sub(a), &c.sub(a)).cmp(&BigRational::zero())
}

/// Counterclockwise angular order of direction vectors, starting from the
/// positive x axis.
fn angle_cmp(a: &Point, b: &Point) -> Ordering {
    let half = |p: &Point| p.y.is_negative() || (p.y.is_zero() && p.x.is_negative());
    match (half(a), half(b)) {
        (false, true) => Ordering::Less,
        (true, false) => Ordering::Greater,
        _ => BigRational::zero().cmp(&cross(a, b)),
    }
}

/// Points in general position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self, GeometryError> {
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(GeometryError::DuplicatePoint(i, j));
                }
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                for k in j + 1..points.len() {
                    if orientation(&points[i], &points[j], &points[k]) == Ordering::Equal {
                        return Err(GeometryError::CollinearTriple(i, j, k));
                    }
                }
            }
        }
        Ok(PointSet { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The rectilinear drawing: straight segments between all pairs.
    pub fn drawing(&self) -> Result<Drawing, GeometryError> {
        build_polyline(&self.points, &BTreeMap::new())
    }
}

/// Convenience wrapper: validate the points, then draw them.
pub fn parse_points(points: Vec<Point>) -> Result<Drawing, GeometryError> {
    PointSet::new(points)?.drawing()
}

/// Independent check of which segment pairs properly cross, straight from
/// orientation signs.
pub fn segment_crossings(points: &[Point]) -> Vec<(Edge, Edge)> {
    let n = points.len();
    let edges: Vec<Edge> = all_edges(n).collect();
    let mut out = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if e.is_adjacent(f) {
                continue;
            }
            let (a, b) = (&points[e.lo()], &points[e.hi()]);
            let (c, d) = (&points[f.lo()], &points[f.hi()]);
            let o1 = orientation(a, b, c);
            let o2 = orientation(a, b, d);
            let o3 = orientation(c, d, a);
            let o4 = orientation(c, d, b);
            if o1 != o2 && o3 != o4 && o1 != Ordering::Equal && o2 != Ordering::Equal {
                out.push((e, f));
            }
        }
    }
    out
}

struct Hit {
    point: Point,
    edges: [Edge; 2],
    /// Position along each edge: segment index and parameter within it.
    at: [(usize, BigRational); 2],
    /// Forward directions of the two crossing segments.
    dirs: [Point; 2],
}

/// Builds a drawing whose edge `e` is the polygonal curve from
/// `points[e.lo()]` through `bends[e]` to `points[e.hi()]`; missing entries
/// are straight. Degenerate configurations (touching curves, curves through
/// vertices, several crossings at one point) are rejected.
pub fn build_polyline(points: &[Point], bends: &BTreeMap<Edge, Vec<Point>>) -> Result<Drawing, GeometryError> {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            if points[i] == points[j] {
                return Err(GeometryError::DuplicatePoint(i, j));
            }
        }
    }
    let edges: Vec<Edge> = all_edges(n).collect();
    let paths: Vec<Vec<Point>> = edges
        .iter()
        .map(|e| {
            let mut p = vec![points[e.lo()].clone()];
            if let Some(b) = bends.get(e) {
                p.extend(b.iter().cloned());
            }
            p.push(points[e.hi()].clone());
            p
        })
        .collect();

    for (ei, e) in edges.iter().enumerate() {
        let path = &paths[ei];
        for w in path.windows(2) {
            if w[0] == w[1] {
                return Err(GeometryError::Degenerate(format!("edge {e} has a zero-length piece")));
            }
            for (x, p) in points.iter().enumerate() {
                if !e.contains(x) && on_segment(p, &w[0], &w[1]) {
                    return Err(GeometryError::Degenerate(format!("edge {e} passes through vertex {x}")));
                }
            }
        }
        for i in 0..path.len() - 1 {
            for j in i + 1..path.len() - 1 {
                match intersect(&path[i], &path[i + 1], &path[j], &path[j + 1]) {
                    Meet::None => {}
                    Meet::Point(_, _, _) if j == i + 1 && !turns_back(&path[i], &path[i + 1], &path[j + 1]) => {}
                    _ => return Err(GeometryError::Degenerate(format!("edge {e} meets itself"))),
                }
            }
        }
    }

    let mut hits: Vec<Hit> = Vec::new();
    for (ei, &e) in edges.iter().enumerate() {
        for (fi, &f) in edges.iter().enumerate().skip(ei + 1) {
            let shared: Vec<usize> = e.ends().into_iter().filter(|&x| f.contains(x)).collect();
            for si in 0..paths[ei].len() - 1 {
                for sj in 0..paths[fi].len() - 1 {
                    let (p, p2) = (&paths[ei][si], &paths[ei][si + 1]);
                    let (q, q2) = (&paths[fi][sj], &paths[fi][sj + 1]);
                    match intersect(p, p2, q, q2) {
                        Meet::None => {}
                        Meet::Overlap => {
                            return Err(GeometryError::Degenerate(format!("edges {e} and {f} overlap")));
                        }
                        Meet::Point(pt, t, u) => {
                            let interior = t > BigRational::zero()
                                && t < BigRational::one()
                                && u > BigRational::zero()
                                && u < BigRational::one();
                            if interior {
                                hits.push(Hit {
                                    point: pt,
                                    edges: [e, f],
                                    at: [(si, t), (sj, u)],
                                    dirs: [p2.sub(p), q2.sub(q)],
                                });
                            } else if !shared.iter().any(|&x| points[x] == pt) {
                                return Err(GeometryError::Degenerate(format!("edges {e} and {f} touch without crossing")));
                            }
                        }
                    }
                }
            }
        }
    }
    for i in 0..hits.len() {
        for j in i + 1..hits.len() {
            if hits[i].point == hits[j].point {
                return Err(GeometryError::Degenerate(format!(
                    "crossings of {}/{} and {}/{} coincide",
                    hits[i].edges[0], hits[i].edges[1], hits[j].edges[0], hits[j].edges[1]
                )));
            }
        }
    }

    let mut per_edge: BTreeMap<Edge, Vec<(usize, BigRational, usize)>> = BTreeMap::new();
    for (id, h) in hits.iter().enumerate() {
        for k in 0..2 {
            per_edge.entry(h.edges[k]).or_default().push((h.at[k].0, h.at[k].1.clone(), id));
        }
    }
    let raw_edges = edges
        .iter()
        .map(|&e| {
            let mut seq = per_edge.remove(&e).unwrap_or_default();
            seq.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
            RawEdge { ends: e.ends(), crossings: seq.into_iter().map(|s| s.2).collect() }
        })
        .collect();

    let mut rotations = Vec::with_capacity(n + hits.len());
    for v in 0..n {
        let mut dirs: Vec<(Point, usize)> = (0..n)
            .filter(|&w| w != v)
            .map(|w| {
                let e = Edge::new(v, w);
                let path = &paths[crate::map::edge_index(n, e)];
                let d = if v == e.lo() { path[1].sub(&path[0]) } else { path[path.len() - 2].sub(&path[path.len() - 1]) };
                (d, w)
            })
            .collect();
        dirs.sort_by(|a, b| angle_cmp(&a.0, &b.0));
        for pair in dirs.windows(2) {
            if angle_cmp(&pair[0].0, &pair[1].0) == Ordering::Equal {
                return Err(GeometryError::Degenerate(format!("edges {v}-{} and {v}-{} leave in the same direction", pair[0].1, pair[1].1)));
            }
        }
        rotations.push(RawRotation { node: RawNode::Vertex(v), toward: dirs.into_iter().map(|d| d.1).collect() });
    }
    for (id, h) in hits.iter().enumerate() {
        let [e, f] = h.edges;
        let toward = if cross(&h.dirs[0], &h.dirs[1]).is_positive() {
            vec![e.hi(), f.hi(), e.lo(), f.lo()]
        } else {
            vec![e.hi(), f.lo(), e.lo(), f.hi()]
        };
        rotations.push(RawRotation { node: RawNode::Crossing(id), toward });
    }
    Ok(Drawing::from_raw(&RawDrawing { n, edges: raw_edges, rotations })?)
}

enum Meet {
    None,
    Overlap,
    /// Meeting point with its parameters on the two segments.
    Point(Point, BigRational, BigRational),
}

fn intersect(p: &Point, p2: &Point, q: &Point, q2: &Point) -> Meet {
    let r = p2.sub(p);
    let s = q2.sub(q);
    let qp = q.sub(p);
    let denom = cross(&r, &s);
    if denom.is_zero() {
        if !cross(&qp, &r).is_zero() {
            return Meet::None;
        }
        // Collinear: compare parameter intervals along r.
        let rr = dot(&r, &r);
        let t0 = dot(&qp, &r) / &rr;
        let t1 = dot(&q2.sub(p), &r) / &rr;
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let lo = if lo > BigRational::zero() { lo } else { BigRational::zero() };
        let hi = if hi < BigRational::one() { hi } else { BigRational::one() };
        return match lo.cmp(&hi) {
            Ordering::Greater => Meet::None,
            Ordering::Less => Meet::Overlap,
            Ordering::Equal => {
                let pt = p.add_scaled(&r, &lo);
                let u = dot(&pt.sub(q), &s) / dot(&s, &s);
                Meet::Point(pt, lo, u)
            }
        };
    }
    let t = cross(&qp, &s) / &denom;
    let u = cross(&qp, &r) / &denom;
    let unit = |x: &BigRational| !x.is_negative() && *x <= BigRational::one();
    if unit(&t) && unit(&u) {
        Meet::Point(p.add_scaled(&r, &t), t, u)
    } else {
        Meet::None
    }
}

fn on_segment(x: &Point, a: &Point, b: &Point) -> bool {
    if orientation(a, b, x) != Ordering::Equal {
        return false;
    }
    let ax = x.sub(a);
    let ab = b.sub(a);
    let t = dot(&ax, &ab);
    !t.is_negative() && t <= dot(&ab, &ab)
}

/// Whether the polyline `a -> b -> c` doubles back on itself at `b`.
fn turns_back(a: &Point, b: &Point, c: &Point) -> bool {
    let u = b.sub(a);
    let v = c.sub(b);
    cross(&u, &v).is_zero() && dot(&u, &v).is_negative()
}

/// Points `(i, 2^i)` for `i` in `0..n`: convex position, counterclockwise,
/// and for `n <= 12` no three diagonals are concurrent.
pub fn convex_points(n: usize) -> Vec<Point> {
    (0..n as u32).map(|i| Point::int(i as i64, 1 << i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::int(x, y)).collect()
    }

    #[test]
    fn convex_pentagon_is_natural() {
        let d = parse_points(pts(&[(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)])).unwrap();
        assert_eq!(d.crossing_count(), 5);
        assert!(d.faces().iter().any(|f| f.vertices().len() == 5 && f.darts().len() == 5));
    }

    #[test]
    fn collinear_and_duplicate_points_are_rejected() {
        assert_eq!(
            parse_points(pts(&[(0, 0), (1, 1), (5, 0), (2, 2), (7, 3)])).unwrap_err(),
            GeometryError::CollinearTriple(0, 1, 3)
        );
        assert_eq!(parse_points(pts(&[(0, 0), (1, 3), (0, 0)])).unwrap_err(), GeometryError::DuplicatePoint(0, 2));
    }

    #[test]
    fn two_points_inside_a_triangle_give_one_crossing() {
        // Brute force over 4-subsets: only {0,1,3,4} is in convex position.
        let d = parse_points(pts(&[(0, 0), (12, 0), (6, 12), (5, 3), (7, 4)])).unwrap();
        assert_eq!(d.crossing_count(), 1);
    }

    #[test]
    fn crossings_agree_with_orientation_oracle() {
        let p = convex_points(7);
        let d = parse_points(p.clone()).unwrap();
        assert_eq!(d.crossing_pairs(), segment_crossings(&p));
    }

    #[test]
    fn bends_reroute_an_edge() {
        // Square with diagonal 0-2 bent around vertex 3: no crossing remains.
        let p = pts(&[(0, 0), (4, 0), (4, 4), (0, 4)]);
        let mut bends = BTreeMap::new();
        bends.insert(Edge::new(0, 2), pts(&[(-1, 5), (5, 5)]));
        let d = build_polyline(&p, &bends).unwrap();
        assert_eq!(d.crossing_count(), 0);
        bends.insert(Edge::new(0, 2), pts(&[(0, 4), (5, 5)]));
        assert!(matches!(build_polyline(&p, &bends), Err(GeometryError::Degenerate(_))));
    }
}
