//! SVG export of the planarization, for looking at drawings.
//!
//! Nodes are placed by a Tutte-style barycentric layout: the nodes of the
//! longest face sit on a circle and every other node moves to the average of
//! its neighbours. Each segment becomes one `<polyline>`. A `.cdrw` sidecar
//! with the same stem is written next to the picture.

use std::fmt::Write as _;
use std::io;
use std::path::{Path, PathBuf};

use convexdraw_core::{Drawing, Node};

use crate::format::Document;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 40.0;
const SWEEPS: usize = 2000;

/// Node positions in the unit disk, indexed like `Drawing::node_index`.
pub fn layout(d: &Drawing) -> Vec<(f64, f64)> {
    let count = d.node_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); count];
    for s in 0..d.segment_count() {
        let (a, b) = (d.node_index(d.tail(2 * s)), d.node_index(d.head(2 * s)));
        adj[a].push(b);
        adj[b].push(a);
    }

    let outer = d
        .faces()
        .iter()
        .enumerate()
        .max_by(|(i, f), (j, g)| f.darts().len().cmp(&g.darts().len()).then(j.cmp(i)))
        .map(|(_, f)| f)
        .expect("a drawing has faces");
    let mut ring: Vec<usize> = Vec::new();
    for &dart in outer.darts() {
        let v = d.node_index(d.tail(dart));
        if !ring.contains(&v) {
            ring.push(v);
        }
    }

    let mut pos = vec![(0.0, 0.0); count];
    let mut fixed = vec![false; count];
    for (k, &v) in ring.iter().enumerate() {
        // Clockwise, so the face sits outside the circle.
        let a = -2.0 * std::f64::consts::PI * k as f64 / ring.len() as f64;
        pos[v] = (a.cos(), a.sin());
        fixed[v] = true;
    }
    for _ in 0..SWEEPS {
        for v in 0..count {
            if fixed[v] || adj[v].is_empty() {
                continue;
            }
            let k = adj[v].len() as f64;
            let (sx, sy) = adj[v].iter().fold((0.0, 0.0), |(x, y), &u| (x + pos[u].0, y + pos[u].1));
            pos[v] = (sx / k, sy / k);
        }
    }
    pos
}

fn screen(p: (f64, f64)) -> (f64, f64) {
    let r = (SIZE - 2.0 * MARGIN) / 2.0;
    (SIZE / 2.0 + r * p.0, SIZE / 2.0 - r * p.1)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn render(d: &Drawing, labels: Option<&[String]>) -> String {
    let pos: Vec<(f64, f64)> = layout(d).into_iter().map(screen).collect();
    let mut s = String::new();
    let _ = writeln!(s, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(s, "<g class=\"segments\" fill=\"none\" stroke=\"#345\" stroke-width=\"1.5\">");
    for seg in 0..d.segment_count() {
        let (a, b) = (pos[d.node_index(d.tail(2 * seg))], pos[d.node_index(d.head(2 * seg))]);
        let e = d.dart_edge(2 * seg);
        let _ = writeln!(s, "<polyline data-edge=\"{e}\" points=\"{:.2},{:.2} {:.2},{:.2}\"/>", a.0, a.1, b.0, b.1);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "<g class=\"crossings\" fill=\"#c33\">");
    for c in 0..d.crossing_count() {
        let p = pos[d.node_index(Node::Crossing(convexdraw_core::CrossingId(c)))];
        let _ = writeln!(s, "<circle class=\"crossing\" cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\"/>", p.0, p.1);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "<g class=\"vertices\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">");
    for v in 0..d.n() {
        let p = pos[d.node_index(Node::Vertex(v))];
        let name = labels.and_then(|l| l.get(v)).cloned().unwrap_or_else(|| v.to_string());
        let _ = writeln!(s, "<circle class=\"vertex\" cx=\"{:.2}\" cy=\"{:.2}\" r=\"9\" fill=\"#fff\" stroke=\"#000\"/>", p.0, p.1);
        let _ = writeln!(s, "<text x=\"{:.2}\" y=\"{:.2}\">{}</text>", p.0, p.1 + 5.0, escape(&name));
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}

/// The sidecar path: `path` with extension `.cdrw`.
pub fn sidecar(path: &Path) -> PathBuf {
    path.with_extension("cdrw")
}

/// Writes the picture and its `.cdrw` sidecar; returns the sidecar path.
pub fn export_svg(d: &Drawing, labels: Option<&[String]>, path: &Path) -> io::Result<PathBuf> {
    std::fs::write(path, render(d, labels))?;
    let side = sidecar(path);
    std::fs::write(&side, Document::from_drawing(d, labels.map(|l| l.to_vec())).to_text())?;
    Ok(side)
}

#[cfg(test)]
mod tests {
    use super::*;
    use convexdraw_core::fixtures::natural;

    #[test]
    fn natural_k5_has_five_crossing_markers() {
        let d = natural(5);
        let svg = render(&d, None);
        assert_eq!(svg.matches("class=\"crossing\"").count(), 5);
        assert_eq!(svg.matches("<polyline").count(), d.segment_count());
        assert_eq!(svg, render(&d, None));
    }

    #[test]
    fn outer_face_lies_on_the_circle() {
        let d = natural(6);
        let pos = layout(&d);
        assert!(pos.iter().all(|&(x, y)| x * x + y * y <= 1.0 + 1e-9));
    }
}
