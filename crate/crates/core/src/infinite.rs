//! Semi-decision of flow existence on periodic infinite graphs.
//!
//! A flow of the infinite graph restricts to a flow of every exhaustion
//! quotient `G_n`, so a single `G_n` without a flow proves that none exists.
//! The converse direction needs every `G_n`, which a finite run cannot check:
//! a positive run only reports the depth it reached.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::contraction::exhaustion_quotient;
use crate::error::{Error, Result};
use crate::flow::{find_flow_with, SearchOptions};
use crate::graph::{named, GraphFile, Multigraph};
use crate::group::{AlphabetFile, FiniteAbelianGroup, FlowAlphabet};
use crate::iso::find_contraction_onto;
use crate::periodic::PeriodicPresentation;

pub const DEFAULT_MAX_DEPTH: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    Flow,
    Tension,
}

/// One cut of the certificate's family: a side and its crossing edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutRecord {
    pub side: Vec<String>,
    pub crossing: Vec<String>,
}

/// A partition of the quotient's vertices whose contraction is `pattern`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionWitness {
    pub pattern: String,
    pub classes: BTreeMap<String, usize>,
}

/// A finite graph with no admissible assignment, obtained from the infinite
/// graph at a given depth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionCertificate {
    pub kind: CertificateKind,
    pub depth: usize,
    pub alphabet: AlphabetFile,
    pub quotient: GraphFile,
    /// For flows: the vertex cuts of the quotient, dummies standing for the
    /// contracted infinite components.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cuts: Vec<CutRecord>,
    /// For tensions: a fundamental cycle basis of the window, as signed edge ids.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cycles: Vec<Vec<String>>,
    pub transcript: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<ContractionWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    No(Box<ObstructionCertificate>),
    /// Every depth up to and including this one admits an assignment.
    YesUpTo(usize),
}

impl Verdict {
    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No(_))
    }

    pub fn certificate(&self) -> Option<&ObstructionCertificate> {
        match self {
            Verdict::No(c) => Some(c),
            Verdict::YesUpTo(_) => None,
        }
    }
}

pub(crate) fn vertex_cut_records(g: &Multigraph) -> Vec<CutRecord> {
    (0..g.vertex_count())
        .map(|v| CutRecord {
            side: vec![g.vertex_id(v).to_string()],
            crossing: g
                .incident(v)
                .iter()
                .filter(|&&e| !g.edge(e).is_loop())
                .map(|&e| g.edge_id(e).to_string())
                .collect(),
        })
        .collect()
}

pub fn check_infinite(
    p: &PeriodicPresentation,
    a: &FlowAlphabet,
    max_depth: usize,
) -> Result<Verdict> {
    check_infinite_with(p, a, max_depth, SearchOptions::default())
}

/// Searches `G_0, G_1, ..., G_max_depth` in order and stops at the first one
/// without an A-flow.
pub fn check_infinite_with(
    p: &PeriodicPresentation,
    a: &FlowAlphabet,
    max_depth: usize,
    opts: SearchOptions,
) -> Result<Verdict> {
    let mut transcript = Vec::new();
    let label = a.describe();
    let last = if p.is_finite() { 0 } else { max_depth };
    for n in 0..=last {
        let (q, _) = exhaustion_quotient(p, n)?;
        let g = &q.quotient;
        let head = format!(
            "depth {n}: quotient has {} vertices and {} edges",
            g.vertex_count(),
            g.edge_count()
        );
        if find_flow_with(g, a, opts).is_some() {
            transcript.push(format!("{head}; a flow with values in {label} exists"));
            continue;
        }
        transcript.push(format!(
            "{head}; exhaustive search finds no flow with values in {label}"
        ));
        transcript.push(
            "a flow of the infinite graph would restrict to this quotient, so none exists".into(),
        );
        return Ok(Verdict::No(Box::new(ObstructionCertificate {
            kind: CertificateKind::Flow,
            depth: n,
            alphabet: a.to_file(),
            quotient: g.to_json(),
            cuts: vertex_cut_records(g),
            cycles: Vec::new(),
            transcript,
            witness: None,
        })));
    }
    Ok(Verdict::YesUpTo(last))
}

/// Re-runs the search on the stored finite graph; true when absence is reproduced.
pub fn replay(cert: &ObstructionCertificate) -> Result<bool> {
    let g = Multigraph::try_from(cert.quotient.clone())?;
    let a = FlowAlphabet::from_file(&cert.alphabet)?;
    Ok(match cert.kind {
        CertificateKind::Flow => crate::flow::find_flow(&g, &a).is_none(),
        CertificateKind::Tension => crate::tension::find_tension(&g, &a)?.is_none(),
    })
}

/// Also checks that the stored graph is what `p` yields at the stored depth.
pub fn replay_against(p: &PeriodicPresentation, cert: &ObstructionCertificate) -> Result<bool> {
    let expected = match cert.kind {
        CertificateKind::Flow => exhaustion_quotient(p, cert.depth)?.0.quotient,
        CertificateKind::Tension => p.materialize(cert.depth)?.graph,
    };
    if expected.to_json() != cert.quotient {
        return Ok(false);
    }
    replay(cert)
}

/// Attaches a partition of the certificate's graph contracting onto `pattern`.
pub fn attach_witness(cert: &mut ObstructionCertificate, name: &str, pattern: &Multigraph) -> Result<bool> {
    let g = Multigraph::try_from(cert.quotient.clone())?;
    match find_contraction_onto(&g, pattern)? {
        Some(class) => {
            cert.witness = Some(ContractionWitness {
                pattern: name.to_string(),
                classes: (0..g.vertex_count())
                    .map(|v| (g.vertex_id(v).to_string(), class[v]))
                    .collect(),
            });
            cert.transcript.push(format!(
                "the quotient contracts onto the {name} graph (classes in the witness)"
            ));
            Ok(true)
        }
        None => Ok(false),
    }
}

/// Checks a witness: classes connected, quotient without loops isomorphic to the pattern.
pub fn check_witness(cert: &ObstructionCertificate, pattern: &Multigraph) -> Result<bool> {
    let Some(w) = &cert.witness else {
        return Ok(false);
    };
    let g = Multigraph::try_from(cert.quotient.clone())?;
    let class = (0..g.vertex_count())
        .map(|v| {
            w.classes
                .get(g.vertex_id(v))
                .copied()
                .ok_or_else(|| Error::UnknownVertex(g.vertex_id(v).to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    let k = class.iter().max().map_or(0, |c| c + 1);
    let q = crate::iso::quotient_without_loops(&g, &class, k);
    let connected = class.iter().all(|&c| c < k) && crate::iso::classes_connected(&g, &class, k);
    Ok(connected && crate::iso::is_isomorphic(&q, &pattern.without_loops()))
}

/// The bundled Petersen chain against non-elusive Z4, with a Petersen witness
/// attached to a negative answer.
pub fn check_infinite_z4_petersen_chain(max_depth: usize) -> Result<Verdict> {
    let p = crate::fixtures::petersen_chain();
    let z4 = FiniteAbelianGroup::cyclic(4)?;
    let mut v = check_infinite(&p, &FlowAlphabet::nonzero(&z4), max_depth)?;
    if let Verdict::No(cert) = &mut v {
        attach_witness(cert, "Petersen", &named::petersen())?;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn nz(s: &str) -> FlowAlphabet {
        FlowAlphabet::nonzero(&s.parse::<FiniteAbelianGroup>().unwrap())
    }

    #[test]
    fn double_ray_fails_at_depth_zero() {
        for g in ["Z2", "Z3", "Z2xZ2", "Z7"] {
            let v = check_infinite(&fixtures::double_ray(), &nz(g), 4).unwrap();
            assert_eq!(v.certificate().unwrap().depth, 0, "{g}");
        }
    }

    #[test]
    fn petersen_chain_has_a_petersen_witness() {
        let v = check_infinite_z4_petersen_chain(4).unwrap();
        let cert = v.certificate().unwrap();
        assert_eq!(cert.depth, 0);
        assert!(check_witness(cert, &named::petersen()).unwrap());
        assert!(replay(cert).unwrap());
        assert!(replay_against(&fixtures::petersen_chain(), cert).unwrap());
    }

    #[test]
    fn finite_presentations_agree_with_plain_search() {
        let p = PeriodicPresentation::finite(&named::complete(4));
        assert!(check_infinite(&p, &nz("Z3"), 3).unwrap().is_no());
        assert_eq!(check_infinite(&p, &nz("Z4"), 3).unwrap(), Verdict::YesUpTo(0));
    }

    #[test]
    fn certificate_json_round_trip() {
        let v = check_infinite(&fixtures::ladder_fig1_1(), &nz("Z3"), 4).unwrap();
        let cert = v.certificate().unwrap();
        let text = serde_json::to_string(cert).unwrap();
        let back: ObstructionCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(&back, cert);
        assert!(replay(&back).unwrap());
    }
}
