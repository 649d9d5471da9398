//! Quotients of a graph by a finite family of cuts, and exhaustion quotients.
//!
//! Contracting with respect to cuts `C_1..C_t` sends every vertex to its word:
//! bit `i` is `0` when the vertex lies on side A of `C_i` and `1` otherwise.
//! Only realized words become vertices. Edges keep their ids, so the edge map
//! is the identity; edges inside one word become loops, which are kept and
//! flagged (they carry no constraint for flows).
//!
//! Exhaustion quotients instead keep a finite window and contract every
//! component of the rest to a dummy vertex; there loops are deleted and
//! parallel edges kept.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::EdgeAssignment;
use crate::graph::{enumerate_cuts, GraphBuilder, Multigraph, OrientedCut};
use crate::periodic::{Direction, PeriodicPresentation, Side};

/// One cut as written in a cut file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CutSpec {
    /// Side A as a list of vertex ids.
    Side(Vec<String>),
    /// Side A together with the claimed crossing edges, which are checked.
    Checked { side: Vec<String>, crossing: Vec<String> },
    /// Everything before cell `prefix` (and the prefix graph) on side A.
    Prefix { prefix: i64 },
}

/// The quotient multigraph; vertex ids are the words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractedGraph {
    pub quotient: Multigraph,
    /// Per quotient edge: true when it became a loop by contraction.
    pub loops: Vec<bool>,
}

/// Host vertex to quotient vertex. Edge ids map to themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionMap {
    /// Host vertex ids; for infinite hosts, also labels of contracted far regions.
    pub host_vertices: Vec<String>,
    /// Quotient vertex index of each entry of `host_vertices`.
    pub image: Vec<usize>,
}

impl ContractionMap {
    pub fn image_of(&self, host_vertex: &str) -> Option<usize> {
        self.host_vertices
            .iter()
            .position(|v| v == host_vertex)
            .map(|i| self.image[i])
    }

    /// Host vertices mapped to quotient vertex `q`.
    pub fn preimage(&self, q: usize) -> Vec<&str> {
        self.host_vertices
            .iter()
            .zip(&self.image)
            .filter(|(_, &i)| i == q)
            .map(|(v, _)| v.as_str())
            .collect()
    }
}

fn check_cut(host: &Multigraph, i: usize, cut: &OrientedCut) -> Result<()> {
    if cut.side_mask().len() != host.vertex_count() {
        return Err(Error::NotACut(format!("cut {i} belongs to another graph")));
    }
    let fresh = OrientedCut::from_side(host, cut.side_mask().to_vec())?;
    if fresh.crossing() != cut.crossing() {
        return Err(Error::NotACut(format!(
            "cut {i}: crossing set is not the set of A–B edges"
        )));
    }
    Ok(())
}

/// Builds the quotient from per-vertex words; vertex order is first appearance.
fn quotient_from_words(
    host_vertices: Vec<String>,
    words: &[String],
    edges: &[(String, usize, usize)],
) -> Result<(ContractedGraph, ContractionMap)> {
    let mut b = GraphBuilder::new();
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut image = Vec::with_capacity(words.len());
    for w in words {
        let q = match index.get(w.as_str()) {
            Some(&q) => q,
            None => {
                let q = b.add_vertex(w.clone())?;
                index.insert(w.as_str(), q);
                q
            }
        };
        image.push(q);
    }
    let mut loops = Vec::with_capacity(edges.len());
    for (id, u, v) in edges {
        b.push_edge(id.clone(), image[*u], image[*v])?;
        loops.push(image[*u] == image[*v]);
    }
    Ok((
        ContractedGraph {
            quotient: b.build(),
            loops,
        },
        ContractionMap {
            host_vertices,
            image,
        },
    ))
}

/// Contracts a finite host with respect to `cuts`.
pub fn contract(host: &Multigraph, cuts: &[OrientedCut]) -> Result<(ContractedGraph, ContractionMap)> {
    for (i, c) in cuts.iter().enumerate() {
        check_cut(host, i, c)?;
    }
    let words: Vec<String> = (0..host.vertex_count())
        .map(|v| {
            cuts.iter()
                .map(|c| if c.in_a(v) { '0' } else { '1' })
                .collect()
        })
        .collect();
    let edges: Vec<_> = host
        .edges()
        .iter()
        .map(|e| (e.id.clone(), e.u, e.v))
        .collect();
    quotient_from_words(host.vertex_ids().to_vec(), &words, &edges)
}

/// Turns cut specs into cuts of a finite host.
pub fn resolve_cuts(host: &Multigraph, specs: &[CutSpec]) -> Result<Vec<OrientedCut>> {
    specs
        .iter()
        .enumerate()
        .map(|(i, s)| match s {
            CutSpec::Side(side) => OrientedCut::from_side_ids(host, side),
            CutSpec::Checked { side, crossing } => {
                let cut = OrientedCut::from_side_ids(host, side)?;
                let actual: BTreeSet<String> = cut.crossing_ids(host).into_iter().collect();
                let claimed: BTreeSet<String> = crossing.iter().cloned().collect();
                if actual != claimed {
                    return Err(Error::NotACut(format!(
                        "cut {i}: claimed crossing {claimed:?} but the A–B edges are {actual:?}"
                    )));
                }
                Ok(cut)
            }
            CutSpec::Prefix { .. } => Err(Error::InvalidParameter(format!(
                "cut {i}: prefix cuts need a periodic host"
            ))),
        })
        .collect()
}

enum Rule {
    Prefix(i64),
    Finite(BTreeSet<String>),
}

/// Where a materialized vertex id lives: `None` for prefix vertices.
fn cell_of(id: &str) -> Option<i64> {
    id.rsplit_once('@').and_then(|(_, p)| p.parse().ok())
}

/// Contracts a periodic host with respect to prefix cuts and finite-side cuts.
///
/// The quotient is built on a window wide enough to contain every cut's
/// crossing edges; everything left of it (two-way only) and right of it lies
/// on one fixed word per region. Edges inside those far regions are the
/// infinitely many loops of the quotient and are not listed.
pub fn contract_periodic(
    p: &PeriodicPresentation,
    specs: &[CutSpec],
) -> Result<(ContractedGraph, ContractionMap)> {
    if p.is_finite() {
        let cuts = resolve_cuts(p.prefix(), specs)?;
        return contract(p.prefix(), &cuts);
    }
    let two_way = p.direction() == Direction::TwoWay;
    let mut rules = Vec::new();
    let (mut lo, mut hi) = (0i64, 0i64);
    for (i, s) in specs.iter().enumerate() {
        match s {
            CutSpec::Prefix { prefix } => {
                let k = *prefix;
                if !two_way && (k < 0 || (k == 0 && p.prefix().vertex_count() == 0)) {
                    return Err(Error::NotACut(format!("cut {i}: side A is empty")));
                }
                lo = lo.min(k - 1);
                hi = hi.max(k);
                rules.push(Rule::Prefix(k));
            }
            CutSpec::Side(side) | CutSpec::Checked { side, .. } => {
                if side.is_empty() {
                    return Err(Error::NotACut(format!("cut {i}: side A is empty")));
                }
                for id in side {
                    if let Some(c) = cell_of(id) {
                        lo = lo.min(c);
                        hi = hi.max(c);
                    } else if p.prefix().vertex_ix(id).is_none() {
                        return Err(Error::UnknownVertex(id.clone()));
                    }
                }
                rules.push(Rule::Finite(side.iter().cloned().collect()));
            }
        }
    }
    if !two_way {
        lo = 0;
    }
    let w = p.materialize_range(lo, hi)?;
    for rule in &rules {
        if let Rule::Finite(side) = rule {
            for id in side {
                w.graph.require_vertex(id)?;
            }
        }
    }
    let word_of = |id: Option<&str>, region: Option<Side>| -> String {
        rules
            .iter()
            .map(|r| {
                let in_a = match (r, region) {
                    (Rule::Prefix(_), Some(Side::Left)) => true,
                    (Rule::Prefix(_), Some(Side::Right)) => false,
                    (Rule::Finite(_), Some(_)) => false,
                    (Rule::Prefix(k), None) => {
                        cell_of(id.expect("window vertex")).is_none_or(|c| c < *k)
                    }
                    (Rule::Finite(s), None) => s.contains(id.expect("window vertex")),
                };
                if in_a {
                    '0'
                } else {
                    '1'
                }
            })
            .collect()
    };
    let mut host_vertices: Vec<String> = w.graph.vertex_ids().to_vec();
    let mut words: Vec<String> = host_vertices.iter().map(|v| word_of(Some(v), None)).collect();
    let mut edges: Vec<(String, usize, usize)> = w
        .graph
        .edges()
        .iter()
        .map(|e| (e.id.clone(), e.u, e.v))
        .collect();
    let mut far = HashMap::new();
    for side in [Side::Left, Side::Right] {
        if w.ports.iter().any(|port| port.side == side) {
            far.insert(side, host_vertices.len());
            host_vertices.push(if side == Side::Left { "~L".into() } else { "~R".into() });
            words.push(word_of(None, Some(side)));
        }
    }
    for port in &w.ports {
        edges.push((port.edge_id.clone(), port.inner, far[&port.side]));
    }
    for (i, s) in specs.iter().enumerate() {
        if let CutSpec::Checked { crossing, .. } = s {
            let actual: BTreeSet<String> = edges
                .iter()
                .filter(|(_, u, v)| words[*u].as_bytes()[i] != words[*v].as_bytes()[i])
                .map(|(id, _, _)| id.clone())
                .collect();
            let claimed: BTreeSet<String> = crossing.iter().cloned().collect();
            if actual != claimed {
                return Err(Error::NotACut(format!(
                    "cut {i}: claimed crossing {claimed:?} but the A–B edges are {actual:?}"
                )));
            }
        }
    }
    quotient_from_words(host_vertices, &words, &edges)
}

/// The exhaustion quotient `G_n` of a periodic host: the depth-`n` window with
/// each component of the rest contracted to a dummy `~L{k}` / `~R{k}`.
pub fn exhaustion_quotient(
    p: &PeriodicPresentation,
    n: usize,
) -> Result<(ContractedGraph, ContractionMap)> {
    let w = p.materialize(n)?;
    let mut host_vertices: Vec<String> = w.graph.vertex_ids().to_vec();
    let mut image: Vec<usize> = (0..host_vertices.len()).collect();
    let mut b = GraphBuilder::new();
    for v in w.graph.vertex_ids() {
        b.add_vertex(v.clone())?;
    }
    for e in w.graph.edges().iter().filter(|e| !e.is_loop()) {
        b.push_edge(e.id.clone(), e.u, e.v)?;
    }
    let mut partitions = HashMap::new();
    let mut dummies: HashMap<(Side, usize), usize> = HashMap::new();
    let mut counters = HashMap::new();
    for port in &w.ports {
        let part = partitions
            .entry(port.side)
            .or_insert_with(|| p.tail_partition(port.side));
        let key = (port.side, part[port.outer_vertex]);
        let d = match dummies.get(&key) {
            Some(&d) => d,
            None => {
                let k = counters.entry(port.side).or_insert(0usize);
                let tag = if port.side == Side::Left { 'L' } else { 'R' };
                let id = format!("~{tag}{k}");
                *k += 1;
                let d = b.add_vertex(id.clone())?;
                host_vertices.push(id);
                image.push(d);
                dummies.insert(key, d);
                d
            }
        };
        b.push_edge(port.edge_id.clone(), port.inner, d)?;
    }
    let quotient = b.build();
    let loops = vec![false; quotient.edge_count()];
    Ok((
        ContractedGraph { quotient, loops },
        ContractionMap {
            host_vertices,
            image,
        },
    ))
}

/// `G_n` for a finite host with `S_n` the first `n + 1` vertices.
pub fn exhaustion_quotient_finite(
    host: &Multigraph,
    n: usize,
) -> Result<(ContractedGraph, ContractionMap)> {
    let keep = (n + 1).min(host.vertex_count());
    let mut comp = vec![usize::MAX; host.vertex_count()];
    let mut count = 0;
    for s in keep..host.vertex_count() {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &e in host.incident(x) {
                let y = host.edge(e).other(x);
                if y >= keep && comp[y] == usize::MAX {
                    comp[y] = count;
                    stack.push(y);
                }
            }
        }
        count += 1;
    }
    let mut b = GraphBuilder::new();
    for v in &host.vertex_ids()[..keep] {
        b.add_vertex(v.clone())?;
    }
    for k in 0..count {
        b.add_vertex(format!("~{k}"))?;
    }
    let image: Vec<usize> = (0..host.vertex_count())
        .map(|v| if v < keep { v } else { keep + comp[v] })
        .collect();
    for e in host.edges() {
        let (u, v) = (image[e.u], image[e.v]);
        if u != v {
            b.push_edge(e.id.clone(), u, v)?;
        }
    }
    let quotient = b.build();
    let loops = vec![false; quotient.edge_count()];
    Ok((
        ContractedGraph { quotient, loops },
        ContractionMap {
            host_vertices: host.vertex_ids().to_vec(),
            image,
        },
    ))
}

/// Result of checking `M ⊆ B(G_M) ⊆ B_fin(G)` on a finite host.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SandwichReport {
    pub family_cuts_checked: usize,
    pub quotient_cuts_checked: usize,
    /// Human-readable descriptions of every failing cut.
    pub failures: Vec<String>,
}

impl SandwichReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that each cut of the family is a cut of the quotient (same crossing
/// ids) and that each cut of the quotient pulls back to a cut of the host.
pub fn verify_cut_sandwich(
    host: &Multigraph,
    cuts: &[OrientedCut],
    q: &ContractedGraph,
    map: &ContractionMap,
) -> Result<SandwichReport> {
    let quotient = &q.quotient;
    let mut report = SandwichReport::default();
    let ids = |mut v: Vec<String>| {
        v.sort();
        v
    };
    for (i, cut) in cuts.iter().enumerate() {
        report.family_cuts_checked += 1;
        let side: Vec<bool> = (0..quotient.vertex_count())
            .map(|w| quotient.vertex_id(w).as_bytes().get(i) == Some(&b'0'))
            .collect();
        match OrientedCut::from_side(quotient, side) {
            Ok(qc) if ids(qc.crossing_ids(quotient)) == ids(cut.crossing_ids(host)) => {}
            Ok(_) => report
                .failures
                .push(format!("family cut {i} has different crossing edges in the quotient")),
            Err(_) => report
                .failures
                .push(format!("family cut {i} does not induce a cut of the quotient")),
        }
    }
    for qc in enumerate_cuts(quotient)? {
        report.quotient_cuts_checked += 1;
        let in_a: Vec<bool> = (0..host.vertex_count())
            .map(|v| qc.in_a(map.image[v]))
            .collect();
        match OrientedCut::from_side(host, in_a) {
            Ok(hc) if ids(hc.crossing_ids(host)) == ids(qc.crossing_ids(quotient)) => {}
            _ => report
                .failures
                .push(format!("quotient cut {} does not pull back", qc.describe(quotient))),
        }
    }
    Ok(report)
}

/// Reads a host assignment on the quotient: same edge ids, with values negated
/// where the canonical orientation flips.
pub fn restrict_assignment(
    host: &Multigraph,
    q: &ContractedGraph,
    map: &ContractionMap,
    f: &EdgeAssignment,
) -> Result<EdgeAssignment> {
    let arith = f.carrier().arith();
    let values = q
        .quotient
        .edges()
        .iter()
        .map(|qe| {
            let he = host.require_edge(&qe.id)?;
            let h = host.edge(he);
            let x = f.value(he);
            let (qt, qh) = (map.image[h.tail()], map.image[h.head()]);
            Ok(if qt > qh { arith.neg(x) } else { x })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EdgeAssignment::new(f.carrier().clone(), values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn path_abc() -> Multigraph {
        Multigraph::from_strs(&["a", "b", "c"], &[("ab", "a", "b"), ("bc", "b", "c")]).unwrap()
    }

    #[test]
    fn single_cut_on_a_path() {
        let g = path_abc();
        let cut = OrientedCut::from_side_ids(&g, &["a"]).unwrap();
        let (q, map) = contract(&g, std::slice::from_ref(&cut)).unwrap();
        assert_eq!(q.quotient.vertex_ids(), &["0", "1"]);
        assert_eq!(q.loops, vec![false, true]);
        assert_eq!(map.preimage(1), vec!["b", "c"]);
        assert!(verify_cut_sandwich(&g, &[cut], &q, &map).unwrap().holds());
    }

    #[test]
    fn empty_family_gives_one_vertex() {
        let g = named::complete(4);
        let (q, _) = contract(&g, &[]).unwrap();
        assert_eq!(q.quotient.vertex_ids(), &[""]);
        assert!(q.loops.iter().all(|&l| l));
    }

    #[test]
    fn triangle_two_cuts_is_a_triangle() {
        let g = named::triangle();
        let cuts = vec![
            OrientedCut::from_side_ids(&g, &["v0"]).unwrap(),
            OrientedCut::from_side_ids(&g, &["v0", "v1"]).unwrap(),
        ];
        let (q, map) = contract(&g, &cuts).unwrap();
        assert_eq!(q.quotient.vertex_ids(), &["00", "10", "11"]);
        assert!(q.loops.iter().all(|&l| !l));
        assert!(verify_cut_sandwich(&g, &cuts, &q, &map).unwrap().holds());
    }

    #[test]
    fn foreign_cut_is_rejected() {
        let g = path_abc();
        let other = Multigraph::from_strs(&["a", "b", "c"], &[("x", "a", "c")]).unwrap();
        let cut = OrientedCut::from_side_ids(&other, &["a"]).unwrap();
        assert!(matches!(contract(&g, &[cut]), Err(Error::NotACut(_))));
        let bad = CutSpec::Checked {
            side: vec!["a".into()],
            crossing: vec!["bc".into()],
        };
        assert!(matches!(resolve_cuts(&g, &[bad]), Err(Error::NotACut(_))));
    }

    #[test]
    fn cut_spec_json_shapes() {
        let specs: Vec<CutSpec> =
            serde_json::from_str(r#"[["a","b"],{"prefix":2},{"side":["a"],"crossing":["ab"]}]"#).unwrap();
        assert_eq!(specs[0], CutSpec::Side(vec!["a".into(), "b".into()]));
        assert_eq!(specs[1], CutSpec::Prefix { prefix: 2 });
        assert!(matches!(specs[2], CutSpec::Checked { .. }));
    }

    #[test]
    fn double_ray_exhaustion_is_a_star() {
        let p = PeriodicPresentation::parse_json(
            r#"{"cell":{"vertices":["v"],"edges":[]},"glue":[["cell.v","next.v"]],"direction":"two-way"}"#,
        )
        .unwrap();
        let (q, _) = exhaustion_quotient(&p, 0).unwrap();
        assert_eq!(q.quotient.vertex_ids(), &["v@0", "~L0", "~R0"]);
        assert_eq!(q.quotient.edge_count(), 2);
        assert_eq!(q.quotient.degree(0), 2);
    }

    #[test]
    fn finite_exhaustion_reaches_the_host() {
        let g = named::petersen();
        let (q, _) = exhaustion_quotient_finite(&g, 20).unwrap();
        assert_eq!(q.quotient, g);
        let (q0, map) = exhaustion_quotient_finite(&g, 0).unwrap();
        assert_eq!(q0.quotient.vertex_count(), 2);
        assert_eq!(q0.quotient.edge_count(), 3);
        assert_eq!(map.image[5], 1);
    }

    #[test]
    fn periodic_prefix_cuts() {
        let p = PeriodicPresentation::parse_json(
            r#"{"cell":{"vertices":["v"],"edges":[]},"glue":[["cell.v","next.v"]],"direction":"two-way"}"#,
        )
        .unwrap();
        let (q, map) = contract_periodic(&p, &[CutSpec::Prefix { prefix: 0 }, CutSpec::Prefix { prefix: 2 }]).unwrap();
        // words: left region and cells < 0 -> 00; cells 0,1 -> 10; cells >= 2 -> 11
        assert_eq!(q.quotient.vertex_count(), 3);
        assert_eq!(q.loops.iter().filter(|&&l| !l).count(), 2);
        assert_eq!(map.image_of("~R").map(|i| q.quotient.vertex_id(i)), Some("11"));
        let one_way = PeriodicPresentation::parse_json(
            r#"{"cell":{"vertices":["v"],"edges":[]},"glue":[["cell.v","next.v"]],"direction":"one-way"}"#,
        )
        .unwrap();
        assert!(matches!(
            contract_periodic(&one_way, &[CutSpec::Prefix { prefix: 0 }]),
            Err(Error::NotACut(_))
        ));
        let (q1, _) = contract_periodic(&one_way, &[CutSpec::Side(vec!["v@0".into()])]).unwrap();
        assert_eq!(q1.quotient.vertex_ids(), &["0", "1"]);
        assert_eq!(q1.loops.iter().filter(|&&l| !l).count(), 1);
    }
}
