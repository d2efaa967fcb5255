//! Runs the deciders of the core crate and collects a [`Report`].

use convexdraw_core::convexity::is_convex;
use convexdraw_core::hierarchy::{is_f_convex, is_h_convex, level, FConvexVerdict};
use convexdraw_core::reduction::{apply_crossing_reduction, check_hypothesis, ReductionReport};
use convexdraw_core::reroute::Side;
use convexdraw_core::structure::{check_clauses, find_natural_kr, metrics, structure_decomposition};
use convexdraw_core::{ConvexityError, Drawing, Edge, HierarchyError, RerouteError, StructureError};

use crate::report::{DecompositionSummary, InvertedWitness, K5Witness, NaturalSummary, ReductionSummary, Report, StepSummary, Witnesses};

#[derive(Debug, thiserror::Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Convexity(#[from] ConvexityError),
    #[error(transparent)]
    Hierarchy(#[from] HierarchyError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

pub fn analyze(d: &Drawing, input: &str, rectilinear: bool) -> Result<Report, AnalysisError> {
    let m = metrics(d);
    let conv = is_convex(d)?;
    let h = is_h_convex(d)?;
    let f = if conv.convex { is_f_convex(d)? } else { FConvexVerdict { f_convex: false, unpainted: Vec::new() } };
    let lvl = level(conv.convex, &h, &f)?;

    let witnesses = Witnesses {
        forbidden_k5s: conv.forbidden_k5s.iter().map(|(s, c)| K5Witness { vertices: s.to_vec(), class: c.name().into() }).collect(),
        k6_11: h.k6_11.iter().map(|s| s.to_vec()).collect(),
        inverted_pair: h.inverted.as_ref().map(|p| InvertedWitness {
            first: p.first.to_vec(),
            second: p.second.to_vec(),
            first_triangle: p.first_triangle.to_vec(),
            second_triangle: p.second_triangle.to_vec(),
        }),
        unpainted_faces: f.unpainted.iter().map(|f| f.0).collect(),
    };

    let maximal = find_natural_kr(d);
    let decomposition = if conv.convex && d.n() >= 5 {
        let dec = structure_decomposition(d)?;
        Some(DecompositionSummary {
            core: dec.core.vertices.clone(),
            cycle: dec.core.cycle.clone(),
            inside: dec.inside.clone(),
            outside: dec.outside.clone(),
            alternatives: dec.alternatives.clone(),
            clauses: check_clauses(d, &dec.core).holds,
        })
    } else {
        None
    };
    let natural = NaturalSummary {
        largest: maximal.first().map_or(0, |j| j.r()),
        maximal: maximal.iter().map(|j| j.vertices.clone()).collect(),
        decomposition,
    };

    Ok(Report {
        input: input.to_string(),
        n: d.n(),
        good: true,
        crossings: m.crossings,
        hill: m.hill,
        deficiency: m.deficiency,
        level: lvl.name().into(),
        rectilinear,
        convex: conv.convex,
        h_convex: h.h_convex,
        f_convex: f.f_convex,
        witnesses,
        natural,
        empty_triangles: m.empty_triangles,
        reduction: None,
    })
}

/// The first non-convex `K_5`, in lexicographic order, that passes the
/// hypothesis of the reduction.
pub fn eligible_k5(d: &Drawing) -> Result<Option<Vec<usize>>, RerouteError> {
    let conv = is_convex(d)?;
    for (s, _) in &conv.forbidden_k5s {
        if check_hypothesis(d, s)?.holds {
            return Ok(Some(s.to_vec()));
        }
    }
    Ok(None)
}

fn pair(p: &(Edge, Edge)) -> [[usize; 2]; 2] {
    [p.0.ends(), p.1.ends()]
}

pub fn summarize_reduction(r: &ReductionReport) -> ReductionSummary {
    let l = r.context.labels;
    ReductionSummary {
        subset: r.context.vertices.to_vec(),
        class: r.context.kind.name().into(),
        labels: [l.s, l.t, l.u, l.v, l.w],
        case: r.case.name().into(),
        r1: r.context.in_r1.len(),
        r2: r.context.in_r2.len(),
        steps: r
            .steps
            .iter()
            .map(|s| StepSummary {
                edge: s.edge.ends(),
                via: s.via,
                side: match s.side {
                    Side::Left => "left".into(),
                    Side::Right => "right".into(),
                },
            })
            .collect(),
        removed: r.removed.iter().map(pair).collect(),
        added: r.added.iter().map(pair).collect(),
        crossings_before: r.crossings_before,
        crossings_after: r.crossings_after,
        bound: r.bound,
    }
}

/// Reduces on `subset`, or on the first eligible `K_5` when none is given.
/// `Ok(None)` means no eligible `K_5` exists.
pub fn reduce(d: &Drawing, subset: Option<&[usize]>) -> Result<Option<(Drawing, ReductionSummary)>, RerouteError> {
    let s = match subset {
        Some(s) => s.to_vec(),
        None => match eligible_k5(d)? {
            Some(s) => s,
            None => return Ok(None),
        },
    };
    let (out, rep) = apply_crossing_reduction(d, &s)?;
    Ok(Some((out, summarize_reduction(&rep))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use convexdraw_core::fixtures::{fixture, FixtureId};

    #[test]
    fn tc8_and_tilde_k5_5_reports() {
        let r = analyze(&fixture(FixtureId::TC8), "tc8", false).unwrap();
        assert_eq!((r.level.as_str(), r.crossings, r.hill, r.deficiency), ("h-convex", 18, 18, 0));
        assert!(r.witnesses.unpainted_faces.is_empty());

        let r = analyze(&fixture(FixtureId::TildeK5_5), "k55", false).unwrap();
        assert_eq!(r.level, "good-only");
        assert_eq!(r.witnesses.forbidden_k5s, vec![K5Witness { vertices: vec![0, 1, 2, 3, 4], class: "tilde-K5-5".into() }]);
        assert!(r.natural.decomposition.is_none());
    }

    #[test]
    fn natural_k6_has_nothing_to_reduce() {
        assert!(reduce(&fixture(FixtureId::NaturalK(6)), None).unwrap().is_none());
        let (out, s) = reduce(&fixture(FixtureId::ModifiedTC8), None).unwrap().unwrap();
        assert_eq!(s.crossings_after, out.crossing_count());
        assert!(s.crossings_after + 2 <= s.crossings_before);
    }
}
