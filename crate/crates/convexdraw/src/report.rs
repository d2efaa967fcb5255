//! Report types, carried in the `report` field of a `.cdrw` document, and
//! their tabular text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ReportBody {
    Analysis(Report),
    Reduction(ReductionSummary),
    Canon(CanonReport),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub input: String,
    pub n: usize,
    pub good: bool,
    pub crossings: u64,
    pub hill: u64,
    pub deficiency: i64,
    /// `good-only`, `convex`, `h-convex` or `f-convex`.
    pub level: String,
    /// The drawing came from a point file.
    pub rectilinear: bool,
    pub convex: bool,
    pub h_convex: bool,
    pub f_convex: bool,
    pub witnesses: Witnesses,
    pub natural: NaturalSummary,
    pub empty_triangles: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction: Option<ReductionSummary>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub forbidden_k5s: Vec<K5Witness>,
    pub k6_11: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverted_pair: Option<InvertedWitness>,
    /// Faces left unpainted; any of them witnesses f-convexity.
    pub unpainted_faces: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K5Witness {
    pub vertices: Vec<usize>,
    pub class: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvertedWitness {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub first_triangle: Vec<usize>,
    pub second_triangle: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaturalSummary {
    /// Size of the largest natural subdrawing.
    pub largest: usize,
    /// Maximal natural vertex sets, largest first.
    pub maximal: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionSummary {
    pub core: Vec<usize>,
    pub cycle: Vec<usize>,
    pub inside: Vec<usize>,
    pub outside: Vec<usize>,
    pub alternatives: Vec<Vec<usize>>,
    pub clauses: [bool; 6],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionSummary {
    pub subset: Vec<usize>,
    pub class: String,
    /// Vertices playing `s, t, u, v, w`.
    pub labels: [usize; 5],
    pub case: String,
    pub r1: usize,
    pub r2: usize,
    pub steps: Vec<StepSummary>,
    pub removed: Vec<[[usize; 2]; 2]>,
    pub added: Vec<[[usize; 2]; 2]>,
    pub crossings_before: usize,
    pub crossings_after: usize,
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepSummary {
    pub edge: [usize; 2],
    pub via: usize,
    pub side: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonReport {
    pub first: String,
    pub second: String,
    pub isomorphic: bool,
    pub first_form: String,
    pub second_form: String,
}

/// Vertex names for text output.
pub struct Names<'a>(pub Option<&'a [String]>);

impl Names<'_> {
    pub fn vertex(&self, v: usize) -> String {
        match self.0 {
            Some(l) if v < l.len() => l[v].clone(),
            _ => v.to_string(),
        }
    }

    pub fn set(&self, vs: &[usize]) -> String {
        let parts: Vec<String> = vs.iter().map(|&v| self.vertex(v)).collect();
        format!("{{{}}}", parts.join(","))
    }

    pub fn edge(&self, e: [usize; 2]) -> String {
        format!("{}-{}", self.vertex(e[0]), self.vertex(e[1]))
    }
}

fn row(s: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(s, "{key:<18}{value}");
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn sets(names: &Names, xs: &[Vec<usize>]) -> String {
    if xs.is_empty() {
        return "none".into();
    }
    xs.iter().map(|x| names.set(x)).collect::<Vec<_>>().join(" ")
}

impl Report {
    pub fn to_text(&self, names: &Names) -> String {
        let mut s = String::new();
        row(&mut s, "input", &self.input);
        row(&mut s, "n", self.n);
        row(&mut s, "good", yes(self.good));
        row(&mut s, "crossings", self.crossings);
        row(&mut s, "H(n)", self.hill);
        row(&mut s, "deficiency", self.deficiency);
        let level = if self.rectilinear { format!("{} (rectilinear-ingested)", self.level) } else { self.level.clone() };
        row(&mut s, "level", level);
        row(&mut s, "convex", yes(self.convex));
        row(&mut s, "h-convex", yes(self.h_convex));
        row(&mut s, "f-convex", yes(self.f_convex));
        let w = &self.witnesses;
        if !w.forbidden_k5s.is_empty() {
            let k5: Vec<String> = w.forbidden_k5s.iter().map(|k| format!("{} {}", names.set(&k.vertices), k.class)).collect();
            row(&mut s, "forbidden K5s", k5.join(", "));
        }
        if !w.k6_11.is_empty() {
            row(&mut s, "K6^11 copies", sets(names, &w.k6_11));
        }
        if let Some(p) = &w.inverted_pair {
            row(&mut s, "inverted K4 pair", format!("{} / {}", names.set(&p.first), names.set(&p.second)));
        }
        if self.f_convex {
            row(&mut s, "unpainted faces", w.unpainted_faces.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" "));
        }
        row(&mut s, "largest natural", self.natural.largest);
        row(&mut s, "maximal natural", sets(names, &self.natural.maximal));
        if let Some(dec) = &self.natural.decomposition {
            row(&mut s, "core", names.set(&dec.core));
            row(&mut s, "inside", names.set(&dec.inside));
            row(&mut s, "outside", names.set(&dec.outside));
            if !dec.alternatives.is_empty() {
                row(&mut s, "other cores", sets(names, &dec.alternatives));
            }
            let clauses: String = dec.clauses.iter().map(|&c| if c { '+' } else { '-' }).collect();
            row(&mut s, "clauses", clauses);
        }
        row(&mut s, "empty triangles", self.empty_triangles);
        if let Some(r) = &self.reduction {
            s.push_str(&r.to_text(names));
        }
        s
    }
}

impl ReductionSummary {
    pub fn to_text(&self, names: &Names) -> String {
        let mut s = String::new();
        row(&mut s, "reduced K5", format!("{} {}", names.set(&self.subset), self.class));
        let l = self.labels.map(|v| names.vertex(v));
        row(&mut s, "s t u v w", l.join(" "));
        row(&mut s, "case", &self.case);
        row(&mut s, "r1 r2", format!("{} {}", self.r1, self.r2));
        for (i, st) in self.steps.iter().enumerate() {
            row(&mut s, &format!("step {}", i + 1), format!("{} around {} ({})", names.edge(st.edge), names.vertex(st.via), st.side));
        }
        let pairs = |ps: &[[[usize; 2]; 2]]| {
            if ps.is_empty() {
                return "none".to_string();
            }
            ps.iter().map(|p| format!("{} x {}", names.edge(p[0]), names.edge(p[1]))).collect::<Vec<_>>().join(", ")
        };
        row(&mut s, "removed", pairs(&self.removed));
        row(&mut s, "added", pairs(&self.added));
        row(&mut s, "crossings", format!("{} -> {}", self.crossings_before, self.crossings_after));
        row(&mut s, "guaranteed drop", self.bound);
        s
    }
}

impl CanonReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        row(&mut s, "first", &self.first);
        row(&mut s, "second", &self.second);
        row(&mut s, "isomorphic", yes(self.isomorphic));
        row(&mut s, "first form", &self.first_form);
        row(&mut s, "second form", &self.second_form);
        s
    }
}
