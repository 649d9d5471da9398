//! Spanning Eulerian subgraphs and the Z2⊕Z2-flows they induce.
//!
//! Given a connected spanning even subgraph C, the constant (0,1) on C is a
//! Z2-flow in the second coordinate; every edge e outside C closes a cycle
//! with a path of C, and (1,0) on that cycle fixes e. The sum is non-elusive.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::contraction::exhaustion_quotient;
use crate::error::{Error, Result};
use crate::flow::{verify_flow, EdgeAssignment, FlowFile};
use crate::graph::{EdgeSubset, GraphFile, Multigraph};
use crate::group::{Carrier, FiniteAbelianGroup, FlowAlphabet};
use crate::periodic::PeriodicPresentation;

/// Edge count above which the exhaustive search refuses to run by default.
pub const EULERIAN_EDGE_LIMIT: usize = 16;

/// Connected, spanning (every vertex touched when there are at least two),
/// and all degrees even.
pub fn is_spanning_eulerian(g: &Multigraph, c: &EdgeSubset) -> bool {
    let deg = c.degrees(g);
    if deg.iter().any(|d| d % 2 == 1) {
        return false;
    }
    if g.vertex_count() <= 1 {
        return true;
    }
    deg.iter().all(|&d| d > 0) && g.spanning_subgraph(c).is_connected()
}

pub fn find_spanning_eulerian(g: &Multigraph) -> Result<Option<EdgeSubset>> {
    find_spanning_eulerian_with(g, Some(EULERIAN_EDGE_LIMIT))
}

/// Exhaustive search; edges are decided in input order, taking an edge
/// before leaving it out, so the first hit is the lexicographically largest
/// characteristic vector. A vertex's last undecided edge is forced by parity.
/// `limit = None` lifts the size guard.
pub fn find_spanning_eulerian_with(g: &Multigraph, limit: Option<usize>) -> Result<Option<EdgeSubset>> {
    if let Some(l) = limit {
        if g.edge_count() > l {
            return Err(Error::SizeGuard {
                what: "edge count for exhaustive Eulerian search (pass a larger limit or none to override)",
                actual: g.edge_count(),
                limit: l,
            });
        }
    }
    g.require_connected()?;
    let m = g.edge_count();
    let mut open = vec![0usize; g.vertex_count()];
    for e in g.edges().iter().filter(|e| !e.is_loop()) {
        open[e.u] += 1;
        open[e.v] += 1;
    }
    let mut s = Search {
        g,
        take: vec![false; m],
        open,
        deg: vec![0; g.vertex_count()],
    };
    Ok(s.dfs(0).then(|| EdgeSubset::from_mask(s.take)))
}

struct Search<'a> {
    g: &'a Multigraph,
    take: Vec<bool>,
    open: Vec<usize>,
    deg: Vec<usize>,
}

impl Search<'_> {
    fn dfs(&mut self, e: usize) -> bool {
        if e == self.g.edge_count() {
            return is_spanning_eulerian(self.g, &EdgeSubset::from_mask(self.take.clone()));
        }
        let edge = self.g.edge(e).clone();
        if edge.is_loop() {
            for t in [true, false] {
                self.take[e] = t;
                if self.dfs(e + 1) {
                    return true;
                }
            }
            self.take[e] = false;
            return false;
        }
        self.open[edge.u] -= 1;
        self.open[edge.v] -= 1;
        for t in [true, false] {
            self.take[e] = t;
            let d = t as usize;
            self.deg[edge.u] += d;
            self.deg[edge.v] += d;
            // a closed vertex must have even positive degree
            let ok = [edge.u, edge.v].iter().all(|&v| {
                self.open[v] > 0 || (self.deg[v] % 2 == 0 && (self.deg[v] > 0 || self.g.vertex_count() == 1))
            });
            if ok && self.dfs(e + 1) {
                return true;
            }
            self.deg[edge.u] -= d;
            self.deg[edge.v] -= d;
        }
        self.take[e] = false;
        self.open[edge.u] += 1;
        self.open[edge.v] += 1;
        false
    }
}

fn z2z2() -> FiniteAbelianGroup {
    FiniteAbelianGroup::elementary_2(2).expect("valid")
}

/// BFS path inside `c` from `s` to `t`, as edge indices.
fn path_in(g: &Multigraph, c: &EdgeSubset, s: usize, t: usize) -> Option<Vec<usize>> {
    let mut via = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        if x == t {
            break;
        }
        for &e in g.incident(x) {
            let y = g.edge(e).other(x);
            if c.contains(e) && !seen[y] {
                seen[y] = true;
                via[y] = Some(e);
                queue.push_back(y);
            }
        }
    }
    if !seen[t] {
        return None;
    }
    let mut path = Vec::new();
    let mut x = t;
    while let Some(e) = via[x] {
        path.push(e);
        x = g.edge(e).other(x);
    }
    Some(path)
}

/// Non-elusive Z2⊕Z2-flow from a spanning Eulerian subgraph `c`. Codes:
/// (0,1) = 1 on `c`, plus (1,0) = 2 on each cycle `P_i + e_i`.
pub fn supereulerian_flow(g: &Multigraph, c: &EdgeSubset) -> Result<EdgeAssignment> {
    if c.host_edge_count() != g.edge_count() {
        return Err(Error::InvalidParameter(format!(
            "subset over {} edges for a graph with {}",
            c.host_edge_count(),
            g.edge_count()
        )));
    }
    if !is_spanning_eulerian(g, c) {
        return Err(Error::Precondition(
            "the edge set is not a connected spanning even subgraph".into(),
        ));
    }
    let h = z2z2();
    let mut first = vec![0u8; g.edge_count()];
    let mut second = vec![0u8; g.edge_count()];
    for e in c.iter() {
        second[e] = 1;
    }
    for (e, edge) in g.edges().iter().enumerate() {
        if c.contains(e) {
            continue;
        }
        first[e] ^= 1;
        let path = path_in(g, c, edge.u, edge.v).expect("c is connected and spanning");
        for p in path {
            first[p] ^= 1;
        }
    }
    let values = (0..g.edge_count())
        .map(|e| (2 * first[e] + second[e]) as i64)
        .collect();
    let f = EdgeAssignment::new(Carrier::Group(h.clone()), values);
    let check = verify_flow(g, &f, &FlowAlphabet::nonzero(&h), None)?;
    if !check.is_valid() {
        return Err(Error::Precondition(format!(
            "internal: constructed assignment fails: {}",
            check.describe(g, f.carrier())
        )));
    }
    Ok(f)
}

/// A Hamiltonian circle of a periodic graph, given by the base ids of its
/// edges (cell edge ids or glue ids): `{"edges": ["top", "bot"]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleTemplate {
    pub edges: Vec<String>,
}

impl CircleTemplate {
    fn base(id: &str) -> &str {
        id.split('@').next().unwrap_or(id)
    }

    /// Checks every template id names a cell or glue edge of `p`.
    pub fn validate(&self, p: &PeriodicPresentation) -> Result<()> {
        let w = p.materialize(1)?;
        let mut known: std::collections::HashSet<&str> =
            w.graph.edges().iter().map(|e| Self::base(&e.id)).collect();
        known.extend(w.ports.iter().map(|q| Self::base(&q.edge_id)));
        match self.edges.iter().find(|id| !known.contains(id.as_str())) {
            Some(id) => Err(Error::MalformedPresentation(format!(
                "circle template names unknown edge `{id}`"
            ))),
            None => Ok(()),
        }
    }

    /// Edges of `g` whose base id is in the template.
    pub fn shadow(&self, g: &Multigraph) -> EdgeSubset {
        EdgeSubset::from_mask(
            g.edges()
                .iter()
                .map(|e| self.edges.iter().any(|t| t == Self::base(&e.id)))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShadowFailure {
    pub depth: usize,
    pub quotient: GraphFile,
    pub shadow: Vec<String>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShadowVerdict {
    /// Every quotient up to `depth` got a verified non-elusive Z2⊕Z2-flow;
    /// the last one is kept.
    YesUpTo { depth: usize, quotient: GraphFile, flow: FlowFile },
    No(Box<ShadowFailure>),
}

/// For each depth, maps the circle into `G_n`, checks that the image is
/// spanning Eulerian and builds the flow from it.
pub fn hamilton_shadow_flow(
    p: &PeriodicPresentation,
    circle: &CircleTemplate,
    max_depth: usize,
) -> Result<ShadowVerdict> {
    circle.validate(p)?;
    let last = if p.is_finite() { 0 } else { max_depth };
    let mut kept = None;
    for n in 0..=last {
        let (q, _) = exhaustion_quotient(p, n)?;
        let g = q.quotient;
        let c = circle.shadow(&g);
        if !is_spanning_eulerian(&g, &c) {
            let deg = c.degrees(&g);
            let reason = match (0..g.vertex_count()).find(|&v| deg[v] % 2 == 1 || deg[v] == 0) {
                Some(v) => format!("vertex `{}` has degree {} in the image", g.vertex_id(v), deg[v]),
                None => "the image is disconnected".into(),
            };
            return Ok(ShadowVerdict::No(Box::new(ShadowFailure {
                depth: n,
                quotient: g.to_json(),
                shadow: c.ids(&g),
                reason,
            })));
        }
        let f = supereulerian_flow(&g, &c)?;
        kept = Some((g.to_json(), f.to_file(&g)));
    }
    let (quotient, flow) = kept.expect("at least one depth");
    Ok(ShadowVerdict::YesUpTo {
        depth: last,
        quotient,
        flow,
    })
}
