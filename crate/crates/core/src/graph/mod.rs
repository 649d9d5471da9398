//! Finite multigraphs with stable, id-addressed vertices and edges.
//!
//! Vertices and edges are addressed internally by dense indices in input
//! order; the string ids are kept for IO and for matching edges across
//! contractions. Loops and parallel edges are allowed. The graph itself is
//! undirected; orientation only exists in [`DirectedEdge`] views.

mod cuts;
pub mod named;

pub use cuts::{
    edge_connectivity, edge_dominating_degree3_set, enumerate_cuts, enumerate_cuts_with_limit,
    is_bridgeless, is_cycle_space_member, CutIter, OrientedCut, DEFAULT_CUT_VERTEX_LIMIT,
};
pub(crate) use cuts::is_connected_dominating;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One undirected edge: id plus its two endpoints (equal for a loop).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// Endpoint with the smaller vertex index; the canonical tail.
    pub fn tail(&self) -> usize {
        self.u.min(self.v)
    }

    pub fn head(&self) -> usize {
        self.u.max(self.v)
    }

    /// The endpoint opposite `x`. For a loop this is `x` itself.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// An edge together with a direction of traversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DirectedEdge {
    pub edge: usize,
    pub tail: usize,
    pub head: usize,
}

impl DirectedEdge {
    pub fn reversed(self) -> Self {
        DirectedEdge {
            edge: self.edge,
            tail: self.head,
            head: self.tail,
        }
    }

    /// True when this direction agrees with the canonical orientation of its edge.
    pub fn is_canonical(&self) -> bool {
        self.tail <= self.head
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertices: Vec<String>,
    vertex_index: HashMap<String, usize>,
    edges: Vec<Edge>,
    edge_index: HashMap<String, usize>,
    incidence: Vec<Vec<usize>>,
}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Multigraph")
            .field("vertices", &self.vertices)
            .field(
                "edges",
                &self
                    .edges
                    .iter()
                    .map(|e| (&e.id, &self.vertices[e.u], &self.vertices[e.v]))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl Multigraph {
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let mut b = GraphBuilder::new();
        for v in vertices {
            b.add_vertex(v)?;
        }
        for (id, u, v) in edges {
            b.add_edge(id, &u, &v)?;
        }
        Ok(b.build())
    }

    /// Convenience constructor from string slices, used heavily in tests.
    pub fn from_strs(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self> {
        Self::new(
            vertices.iter().copied(),
            edges
                .iter()
                .map(|(id, u, v)| (id.to_string(), u.to_string(), v.to_string())),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_ix(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn require_vertex(&self, id: &str) -> Result<usize> {
        self.vertex_ix(id)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edge_id(&self, e: usize) -> &str {
        &self.edges[e].id
    }

    pub fn edge_ix(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    pub fn require_edge(&self, id: &str) -> Result<usize> {
        self.edge_ix(id).ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    /// Incident edge indices of `v` in edge order; a loop is listed once.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v]
            .iter()
            .map(|&e| if self.edges[e].is_loop() { 2 } else { 1 })
            .sum()
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    /// The canonically oriented view of edge `e` (tail = smaller vertex index).
    pub fn forward(&self, e: usize) -> DirectedEdge {
        let edge = &self.edges[e];
        DirectedEdge {
            edge: e,
            tail: edge.tail(),
            head: edge.head(),
        }
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let c = out.len();
            let mut members = vec![s];
            comp[s] = c;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                i += 1;
                for &e in &self.incidence[x] {
                    let y = self.edges[e].other(x);
                    if comp[y] == usize::MAX {
                        comp[y] = c;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Errors with one vertex from each of the first two components when disconnected.
    pub fn require_connected(&self) -> Result<()> {
        let comps = self.components();
        if comps.len() > 1 {
            return Err(Error::Disconnected(
                self.vertices[comps[0][0]].clone(),
                self.vertices[comps[1][0]].clone(),
            ));
        }
        Ok(())
    }

    /// Copy of the graph without its loops.
    pub fn without_loops(&self) -> Multigraph {
        let mut b = GraphBuilder::new();
        for v in &self.vertices {
            b.add_vertex(v.clone()).expect("ids already unique");
        }
        for e in self.edges.iter().filter(|e| !e.is_loop()) {
            b.push_edge(e.id.clone(), e.u, e.v).expect("ids already unique");
        }
        b.build()
    }

    /// Subgraph on all vertices keeping only the edges of `keep`.
    pub fn spanning_subgraph(&self, keep: &EdgeSubset) -> Multigraph {
        let mut b = GraphBuilder::new();
        for v in &self.vertices {
            b.add_vertex(v.clone()).expect("ids already unique");
        }
        for e in keep.iter() {
            let edge = &self.edges[e];
            b.push_edge(edge.id.clone(), edge.u, edge.v)
                .expect("ids already unique");
        }
        b.build()
    }

    pub fn to_json(&self) -> GraphFile {
        GraphFile::from(self)
    }
}

/// Incremental construction with validation of ids.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    g: Multigraph,
}

impl Default for Multigraph {
    fn default() -> Self {
        Multigraph {
            vertices: Vec::new(),
            vertex_index: HashMap::new(),
            edges: Vec::new(),
            edge_index: HashMap::new(),
            incidence: Vec::new(),
        }
    }
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) -> Result<usize> {
        let id = id.into();
        if self.g.vertex_index.contains_key(&id) {
            return Err(Error::DuplicateVertex(id));
        }
        let ix = self.g.vertices.len();
        self.g.vertex_index.insert(id.clone(), ix);
        self.g.vertices.push(id);
        self.g.incidence.push(Vec::new());
        Ok(ix)
    }

    pub fn vertex_ix(&self, id: &str) -> Option<usize> {
        self.g.vertex_ix(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.g.vertex_count()
    }

    pub fn add_edge(&mut self, id: impl Into<String>, u: &str, v: &str) -> Result<usize> {
        let u = self.g.require_vertex(u)?;
        let v = self.g.require_vertex(v)?;
        self.push_edge(id, u, v)
    }

    /// Adds an edge between vertex indices.
    pub fn push_edge(&mut self, id: impl Into<String>, u: usize, v: usize) -> Result<usize> {
        let id = id.into();
        if self.g.edge_index.contains_key(&id) {
            return Err(Error::DuplicateEdge(id));
        }
        let n = self.g.vertices.len();
        if u >= n || v >= n {
            return Err(Error::UnknownVertex(format!("#{}", u.max(v))));
        }
        let ix = self.g.edges.len();
        self.g.edge_index.insert(id.clone(), ix);
        self.g.edges.push(Edge { id, u, v });
        self.g.incidence[u].push(ix);
        if u != v {
            self.g.incidence[v].push(ix);
        }
        Ok(ix)
    }

    pub fn build(self) -> Multigraph {
        self.g
    }
}

/// A set of edges of a host graph, stored as a membership mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeSubset {
    members: Vec<bool>,
}

impl EdgeSubset {
    pub fn empty(g: &Multigraph) -> Self {
        EdgeSubset {
            members: vec![false; g.edge_count()],
        }
    }

    pub fn full(g: &Multigraph) -> Self {
        EdgeSubset {
            members: vec![true; g.edge_count()],
        }
    }

    pub fn from_mask(members: Vec<bool>) -> Self {
        EdgeSubset { members }
    }

    /// Subset from the low bits of `bits` (bit `i` = edge `i`).
    pub fn from_bits(g: &Multigraph, bits: u64) -> Self {
        EdgeSubset {
            members: (0..g.edge_count()).map(|i| bits >> i & 1 == 1).collect(),
        }
    }

    pub fn from_indices(g: &Multigraph, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(g);
        for i in idx {
            s.members[i] = true;
        }
        s
    }

    pub fn from_ids<S: AsRef<str>>(g: &Multigraph, ids: &[S]) -> Result<Self> {
        let mut s = Self::empty(g);
        for id in ids {
            s.members[g.require_edge(id.as_ref())?] = true;
        }
        Ok(s)
    }

    pub fn contains(&self, e: usize) -> bool {
        self.members[e]
    }

    pub fn insert(&mut self, e: usize) {
        self.members[e] = true;
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn host_edge_count(&self) -> usize {
        self.members.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }

    pub fn union(&self, other: &EdgeSubset) -> EdgeSubset {
        EdgeSubset {
            members: self
                .members
                .iter()
                .zip(&other.members)
                .map(|(a, b)| *a || *b)
                .collect(),
        }
    }

    pub fn is_full(&self) -> bool {
        self.members.iter().all(|&b| b)
    }

    pub fn ids(&self, g: &Multigraph) -> Vec<String> {
        self.iter().map(|e| g.edge_id(e).to_string()).collect()
    }

    /// Per-vertex count of member edges, loops counted twice.
    pub fn degrees(&self, g: &Multigraph) -> Vec<usize> {
        let mut deg = vec![0; g.vertex_count()];
        for e in self.iter() {
            let edge = g.edge(e);
            deg[edge.u] += 1;
            deg[edge.v] += 1;
        }
        deg
    }
}

/// On-disk graph format: `{"vertices":[...],"edges":[[id,u,v],...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, String)>,
}

impl From<&Multigraph> for GraphFile {
    fn from(g: &Multigraph) -> Self {
        GraphFile {
            vertices: g.vertices.clone(),
            edges: g
                .edges
                .iter()
                .map(|e| (e.id.clone(), g.vertices[e.u].clone(), g.vertices[e.v].clone()))
                .collect(),
        }
    }
}

impl TryFrom<GraphFile> for Multigraph {
    type Error = Error;

    fn try_from(f: GraphFile) -> Result<Self> {
        Multigraph::new(f.vertices, f.edges)
    }
}

impl Serialize for Multigraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphFile::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Multigraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = GraphFile::deserialize(d)?;
        Multigraph::try_from(f).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicate_and_dangling_ids() {
        assert_eq!(
            Multigraph::from_strs(&["a", "a"], &[]).unwrap_err(),
            Error::DuplicateVertex("a".into())
        );
        assert_eq!(
            Multigraph::from_strs(&["a", "b"], &[("e", "a", "b"), ("e", "b", "a")]).unwrap_err(),
            Error::DuplicateEdge("e".into())
        );
        assert_eq!(
            Multigraph::from_strs(&["a"], &[("e", "a", "z")]).unwrap_err(),
            Error::UnknownVertex("z".into())
        );
    }

    #[test]
    fn loops_count_twice_and_are_listed_once() {
        let g = Multigraph::from_strs(&["a", "b"], &[("e1", "a", "b"), ("e2", "b", "b")]).unwrap();
        assert_eq!(g.degree(1), 3);
        assert_eq!(g.incident(1), &[0, 1]);
        assert!(g.edge(1).is_loop());
    }

    #[test]
    fn json_round_trip_keeps_order() {
        let text = r#"{"vertices":["a","b"],"edges":[["e1","a","b"],["e2","b","b"]]}"#;
        let g: Multigraph = serde_json::from_str(text).unwrap();
        assert_eq!(serde_json::to_string(&g).unwrap(), text);
    }

    #[test]
    fn disconnected_error_names_both_components() {
        let g = Multigraph::from_strs(&["a", "b", "c"], &[("e", "a", "b")]).unwrap();
        assert_eq!(
            g.require_connected().unwrap_err(),
            Error::Disconnected("a".into(), "c".into())
        );
    }
}
