//! The `.cdrw` interchange format.
//!
//! A document is a JSON object with keys in this order:
//!
//! ```text
//! {
//!   "format": "cdrw",
//!   "version": 1,
//!   "n": 4,
//!   "labels": ["a", "b", "c", "d"],                 (optional)
//!   "edges": [
//!     {"ends":[0,1],"crossings":[]},
//!     {"ends":[0,2],"crossings":[0]},               (crossing ids from ends[0] to ends[1])
//!     ...
//!   ],
//!   "rotations": [
//!     {"node":"v0","toward":[1,3,2]},               (counterclockwise)
//!     {"node":"c0","toward":[0,1,2,3]},
//!     ...
//!   ],
//!   "validation": {...},                            (optional)
//!   "report": {...}                                 (optional)
//! }
//! ```
//!
//! Every dart in a rotation is named by the vertex at the far end of its
//! edge. The writer puts one edge or rotation per line so files diff well.

use std::fmt::Write as _;

use convexdraw_core::convexity::is_convex_fpp;
use convexdraw_core::hierarchy::{is_f_convex, is_h_convex};
use convexdraw_core::{Drawing, HierarchyError, MapError, RawDrawing, RawEdge, RawNode, RawRotation};
use serde::{Deserialize, Serialize};

use crate::report::ReportBody;

pub const FORMAT: &str = "cdrw";
pub const VERSION: u32 = 1;

/// Largest `n` for which generated documents record hierarchy verdicts.
pub const VERDICT_MAX_N: usize = 9;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format {format:?} version {version}")]
    Unsupported { format: String, version: u32 },
    #[error("document carries no drawing")]
    NoDrawing,
    #[error("rotation {index}: bad node name {name:?}, expected v<index> or c<index>")]
    BadNode { index: usize, name: String },
    #[error("{0} labels given for {1} vertices")]
    LabelCount(usize, usize),
    #[error("invalid drawing: {0}")]
    Map(#[from] MapError),
    #[error("validation block: {field} is {actual}, file says {expected}")]
    ValidationMismatch { field: &'static str, expected: String, actual: String },
    #[error("validation could not run: {0}")]
    Hierarchy(#[from] HierarchyError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub ends: [usize; 2],
    pub crossings: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RotationRecord {
    pub node: String,
    pub toward: Vec<usize>,
}

/// Expected properties, checked whenever the document is loaded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Validation {
    pub crossings: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convex: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_convex: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_convex: Option<bool>,
}

impl Validation {
    /// Crossing count, plus the hierarchy verdicts when `n` is small enough.
    pub fn compute(d: &Drawing) -> Result<Validation, HierarchyError> {
        let mut v = Validation { crossings: d.crossing_count(), convex: None, h_convex: None, f_convex: None };
        if d.n() <= VERDICT_MAX_N {
            let h = is_h_convex(d)?;
            let f = if h.convex { is_f_convex(d)?.f_convex } else { false };
            v.convex = Some(h.convex);
            v.h_convex = Some(h.h_convex);
            v.f_convex = Some(f);
        }
        Ok(v)
    }

    pub fn check(&self, d: &Drawing) -> Result<(), FormatError> {
        let mismatch = |field, expected: String, actual: String| Err(FormatError::ValidationMismatch { field, expected, actual });
        if d.crossing_count() != self.crossings {
            return mismatch("crossings", self.crossings.to_string(), d.crossing_count().to_string());
        }
        if self.convex.is_none() && self.h_convex.is_none() && self.f_convex.is_none() {
            return Ok(());
        }
        let convex = is_convex_fpp(d);
        if let Some(c) = self.convex {
            if c != convex {
                return mismatch("convex", c.to_string(), convex.to_string());
            }
        }
        if self.h_convex.is_none() && self.f_convex.is_none() {
            return Ok(());
        }
        let h = is_h_convex(d)?.h_convex;
        if let Some(x) = self.h_convex {
            if x != h {
                return mismatch("h_convex", x.to_string(), h.to_string());
            }
        }
        if let Some(x) = self.f_convex {
            let f = convex && is_f_convex(d)?.f_convex;
            if x != f {
                return mismatch("f_convex", x.to_string(), f.to_string());
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub format: String,
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rotations: Vec<RotationRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<Validation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<ReportBody>,
}

fn node_name(node: RawNode) -> String {
    match node {
        RawNode::Vertex(v) => format!("v{v}"),
        RawNode::Crossing(c) => format!("c{c}"),
    }
}

fn parse_node(index: usize, name: &str) -> Result<RawNode, FormatError> {
    let bad = || FormatError::BadNode { index, name: name.to_string() };
    let (kind, rest) = name.split_at_checked(1).ok_or_else(bad)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let i: usize = rest.parse().map_err(|_| bad())?;
    match kind {
        "v" => Ok(RawNode::Vertex(i)),
        "c" => Ok(RawNode::Crossing(i)),
        _ => Err(bad()),
    }
}

impl Document {
    /// A document holding `d` in its dense numbering.
    pub fn from_drawing(d: &Drawing, labels: Option<Vec<String>>) -> Document {
        let raw = d.to_raw();
        Document {
            format: FORMAT.into(),
            version: VERSION,
            n: Some(raw.n),
            labels,
            edges: raw.edges.iter().map(|e| EdgeRecord { ends: e.ends, crossings: e.crossings.clone() }).collect(),
            rotations: raw.rotations.iter().map(|r| RotationRecord { node: node_name(r.node), toward: r.toward.clone() }).collect(),
            validation: None,
            report: None,
        }
    }

    /// A document carrying only a report.
    pub fn report_only(report: ReportBody) -> Document {
        Document {
            format: FORMAT.into(),
            version: VERSION,
            n: None,
            labels: None,
            edges: Vec::new(),
            rotations: Vec::new(),
            validation: None,
            report: Some(report),
        }
    }

    pub fn with_validation(mut self, v: Validation) -> Document {
        self.validation = Some(v);
        self
    }

    pub fn with_report(mut self, r: ReportBody) -> Document {
        self.report = Some(r);
        self
    }

    pub fn parse(text: &str) -> Result<Document, FormatError> {
        let doc: Document = serde_json::from_str(text)?;
        doc.check_header()?;
        Ok(doc)
    }

    /// Every document in a whitespace-separated stream.
    pub fn parse_stream(text: &str) -> Result<Vec<Document>, FormatError> {
        let mut out = Vec::new();
        for doc in serde_json::Deserializer::from_str(text).into_iter::<Document>() {
            let doc = doc?;
            doc.check_header()?;
            out.push(doc);
        }
        Ok(out)
    }

    fn check_header(&self) -> Result<(), FormatError> {
        if self.format != FORMAT || self.version != VERSION {
            return Err(FormatError::Unsupported { format: self.format.clone(), version: self.version });
        }
        Ok(())
    }

    pub fn raw(&self) -> Result<RawDrawing, FormatError> {
        let n = self.n.ok_or(FormatError::NoDrawing)?;
        if let Some(l) = &self.labels {
            if l.len() != n {
                return Err(FormatError::LabelCount(l.len(), n));
            }
        }
        let edges = self.edges.iter().map(|e| RawEdge { ends: e.ends, crossings: e.crossings.clone() }).collect();
        let rotations = self
            .rotations
            .iter()
            .enumerate()
            .map(|(i, r)| Ok(RawRotation { node: parse_node(i, &r.node)?, toward: r.toward.clone() }))
            .collect::<Result<_, FormatError>>()?;
        Ok(RawDrawing { n, edges, rotations })
    }

    /// Builds the drawing and checks it against the validation block.
    pub fn drawing(&self) -> Result<Drawing, FormatError> {
        let d = Drawing::from_raw(&self.raw()?)?;
        if let Some(v) = &self.validation {
            v.check(&d)?;
        }
        Ok(d)
    }

    /// Stable, line-oriented JSON.
    pub fn to_text(&self) -> String {
        let mut fields: Vec<String> = vec![
            format!("\"format\": {}", json(&self.format)),
            format!("\"version\": {}", self.version),
        ];
        if let Some(n) = self.n {
            fields.push(format!("\"n\": {n}"));
        }
        if let Some(l) = &self.labels {
            fields.push(format!("\"labels\": {}", json(l)));
        }
        if !self.edges.is_empty() {
            fields.push(format!("\"edges\": {}", list(&self.edges)));
        }
        if !self.rotations.is_empty() {
            fields.push(format!("\"rotations\": {}", list(&self.rotations)));
        }
        if let Some(v) = &self.validation {
            fields.push(format!("\"validation\": {}", json(v)));
        }
        if let Some(r) = &self.report {
            fields.push(format!("\"report\": {}", indent(&serde_json::to_string_pretty(r).expect("reports serialize"))));
        }
        let mut s = String::from("{\n");
        for (i, f) in fields.iter().enumerate() {
            let _ = write!(s, "  {f}");
            s.push_str(if i + 1 < fields.len() { ",\n" } else { "\n" });
        }
        s.push_str("}\n");
        s
    }
}

fn json<T: Serialize + ?Sized>(x: &T) -> String {
    serde_json::to_string(x).expect("plain data serializes")
}

fn list<T: Serialize>(items: &[T]) -> String {
    let mut s = String::from("[\n");
    for (i, it) in items.iter().enumerate() {
        let _ = write!(s, "    {}", json(it));
        s.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
    }
    s.push_str("  ]");
    s
}

fn indent(block: &str) -> String {
    block.replace('\n', "\n  ")
}

/// Writes `d` with a freshly computed validation block.
pub fn emit_validated(d: &Drawing, labels: Option<Vec<String>>) -> Result<String, HierarchyError> {
    Ok(Document::from_drawing(d, labels).with_validation(Validation::compute(d)?).to_text())
}

#[cfg(test)]
mod tests {
    use super::*;
    use convexdraw_core::canon::canonical_form;
    use convexdraw_core::fixtures::{natural, tilde_k5_3};

    #[test]
    fn round_trip_keeps_the_drawing() {
        let d = tilde_k5_3();
        let text = Document::from_drawing(&d, Some(["s", "t", "u", "v", "w"].map(String::from).to_vec())).to_text();
        let back = Document::parse(&text).unwrap();
        assert_eq!(back.labels.as_ref().unwrap()[4], "w");
        let e = back.drawing().unwrap();
        assert_eq!(canonical_form(&d).unwrap(), canonical_form(&e).unwrap());
        assert_eq!(Document::from_drawing(&e, back.labels.clone()).to_text(), text);
    }

    #[test]
    fn validation_block_catches_a_wrong_count() {
        let d = natural(5);
        let mut doc = Document::from_drawing(&d, None).with_validation(Validation::compute(&d).unwrap());
        assert_eq!(doc.validation.as_ref().unwrap().f_convex, Some(true));
        doc.drawing().unwrap();
        doc.validation.as_mut().unwrap().crossings = 4;
        let err = doc.drawing().unwrap_err();
        assert!(matches!(err, FormatError::ValidationMismatch { field: "crossings", .. }), "{err}");
        doc.validation.as_mut().unwrap().crossings = 5;
        doc.validation.as_mut().unwrap().h_convex = Some(false);
        assert!(matches!(doc.drawing().unwrap_err(), FormatError::ValidationMismatch { field: "h_convex", .. }));
    }

    #[test]
    fn malformed_input_names_the_place() {
        let err = Document::parse("{\n  \"format\": \"cdrw\",\n  \"version\": 1,\n  \"n\": x\n}").unwrap_err();
        assert!(err.to_string().contains("line 4"), "{err}");
        let err = Document::parse("{\"format\":\"cdrw\",\"version\":1,\"n\":3,\"edges\":[],\"rotations\":[{\"node\":\"q1\",\"toward\":[]}]}")
            .unwrap()
            .drawing()
            .unwrap_err();
        assert!(matches!(err, FormatError::BadNode { index: 0, .. }));
        let err = Document::parse("{\"format\":\"cdrw\",\"version\":2}").unwrap_err();
        assert!(matches!(err, FormatError::Unsupported { version: 2, .. }));
    }

    #[test]
    fn adjacent_crossing_is_reported() {
        // Crossing 0 placed on 0-1 and 0-2, which share vertex 0.
        let text = r#"{"format":"cdrw","version":1,"n":3,
            "edges":[{"ends":[0,1],"crossings":[0]},{"ends":[0,2],"crossings":[0]},{"ends":[1,2],"crossings":[]}],
            "rotations":[{"node":"v0","toward":[1,2]},{"node":"v1","toward":[2,0]},{"node":"v2","toward":[0,1]},
                         {"node":"c0","toward":[0,1,0,2]}]}"#;
        let err = Document::parse(text).unwrap().drawing().unwrap_err();
        assert!(err.to_string().contains("0-1") && err.to_string().contains("0-2"), "{err}");
    }
}
