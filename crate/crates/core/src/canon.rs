//! Canonical forms of drawings up to vertex relabelling and sphere
//! homeomorphism, reflections included.
//!
//! Two drawings are equivalent exactly when their planarizations are
//! isomorphic as maps by an isomorphism sending vertices to vertices. Such
//! an isomorphism is fixed by the image of one dart and the choice of
//! orientation, so the minimum over every rooted traversal is a complete
//! invariant. Rooting only at darts that leave a vertex covers every
//! relabelling of the vertices in both orientations.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write;

use crate::error::CanonError;
use crate::map::{Drawing, Node};

/// Default bound on `n` for canonical forms.
pub const DEFAULT_MAX_N: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: usize,
    crossings: usize,
    code: Vec<u32>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn crossings(&self) -> usize {
        self.crossings
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K{}x{}:", self.n, self.crossings)?;
        for (i, c) in self.code.iter().enumerate() {
            if i > 0 {
                f.write_char('.')?;
            }
            write!(f, "{c:x}")?;
        }
        Ok(())
    }
}

impl CanonicalForm {
    pub fn to_string_form(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "{self}");
        s
    }
}

pub fn canonical_form(d: &Drawing) -> Result<CanonicalForm, CanonError> {
    canonical_form_bounded(d, DEFAULT_MAX_N)
}

pub fn canonical_form_bounded(d: &Drawing, max_n: usize) -> Result<CanonicalForm, CanonError> {
    if d.n() > max_n {
        return Err(CanonError::TooLarge { n: d.n(), bound: max_n });
    }
    let mut best: Option<Vec<u32>> = None;
    let mut scratch = Traversal::new(d.dart_count());
    for v in 0..d.n() {
        for root in d.darts_at(Node::Vertex(v)) {
            for mirrored in [false, true] {
                let code = scratch.encode(d, root, mirrored, best.as_deref());
                if let Some(code) = code {
                    best = Some(code);
                }
            }
        }
    }
    Ok(CanonicalForm { n: d.n(), crossings: d.crossing_count(), code: best.expect("a drawing has darts") })
}

pub fn is_isomorphic(a: &Drawing, b: &Drawing) -> Result<bool, CanonError> {
    if a.n() != b.n() || a.crossing_count() != b.crossing_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

struct Traversal {
    label: Vec<u32>,
    order: Vec<usize>,
}

impl Traversal {
    fn new(darts: usize) -> Self {
        Traversal { label: vec![u32::MAX; darts], order: Vec::with_capacity(darts) }
    }

    /// Code of the traversal from `root`, or `None` once it is known to be
    /// no smaller than `bound`.
    fn encode(&mut self, d: &Drawing, root: usize, mirrored: bool, bound: Option<&[u32]>) -> Option<Vec<u32>> {
        self.label.iter_mut().for_each(|l| *l = u32::MAX);
        self.order.clear();
        self.label[root] = 0;
        self.order.push(root);
        let mut code = Vec::with_capacity(3 * self.label.len());
        let mut smaller = bound.is_none();
        let mut head = 0;
        while head < self.order.len() {
            let x = self.order[head];
            head += 1;
            let turn = if mirrored { d.rot_prev(x) } else { d.rot_next(x) };
            let tag = match d.tail(x) {
                Node::Vertex(_) => 0,
                Node::Crossing(_) => 1,
            };
            let rev = self.visit(x ^ 1);
            let nxt = self.visit(turn);
            for value in [tag, rev, nxt] {
                if !smaller {
                    let b = bound.expect("bound present while not yet smaller")[code.len()];
                    if value > b {
                        return None;
                    }
                    if value < b {
                        smaller = true;
                    }
                }
                code.push(value);
            }
        }
        debug_assert_eq!(self.order.len(), self.label.len(), "map is connected");
        if smaller {
            Some(code)
        } else {
            None
        }
    }

    fn visit(&mut self, x: usize) -> u32 {
        if self.label[x] == u32::MAX {
            self.label[x] = self.order.len() as u32;
            self.order.push(x);
        }
        self.label[x]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::tests::{crossing_k4, planar_k4};

    #[test]
    fn k4_types_differ() {
        let a = Drawing::from_raw(&planar_k4()).unwrap();
        let b = Drawing::from_raw(&crossing_k4()).unwrap();
        assert_ne!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        assert!(is_isomorphic(&a, &a.reflect()).unwrap());
        assert!(is_isomorphic(&b, &b.relabel(&[3, 1, 0, 2])).unwrap());
    }

    #[test]
    fn bound_is_enforced() {
        let a = Drawing::from_raw(&planar_k4()).unwrap();
        assert_eq!(canonical_form_bounded(&a, 3), Err(CanonError::TooLarge { n: 4, bound: 3 }));
    }
}
