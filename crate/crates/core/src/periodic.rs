//! Finitely presented infinite graphs: a repeating cell glued to copies of
//! itself, optionally preceded by a finite prefix.
//!
//! Copy `i` of a cell vertex `x` is named `x@i`, of a cell edge `e` is `e@i`,
//! and the `k`-th glue edge between copies `i` and `i+1` is `g{k}@i` (or
//! `id@i` when the glue entry names an id). Prefix ids are kept as they are.
//!
//! A two-way presentation is materialized in the order `0, 1, -1, 2, -2, ...`,
//! a one-way presentation in the order `0, 1, 2, ...`; depth `n` means the
//! first `n + 1` copies. Each depth extends the previous one by appending
//! vertices and edges, so smaller windows are induced prefixes of larger ones.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, GraphFile, Multigraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "one-way")]
    OneWay,
    #[serde(rename = "two-way")]
    TwoWay,
}

/// On-disk presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prefix: Option<GraphFile>,
    pub cell: GraphFile,
    #[serde(default)]
    pub glue: Vec<Vec<String>>,
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Glue {
    id: String,
    from: usize,
    to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicPresentation {
    prefix: Multigraph,
    cell: Multigraph,
    glue: Vec<Glue>,
    prefix_glue: Vec<Glue>,
    direction: Direction,
}

/// Which infinite end a boundary port leads towards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// A glue edge with one end inside the window and the other just outside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Port {
    pub side: Side,
    /// Id the edge has in the infinite graph.
    pub edge_id: String,
    /// Window vertex index.
    pub inner: usize,
    /// Cell position and cell vertex of the outer end.
    pub outer_cell: i64,
    pub outer_vertex: usize,
}

/// A finite window of a presentation together with its dangling ports.
#[derive(Debug, Clone)]
pub struct Window {
    pub graph: Multigraph,
    /// Inclusive range of materialized cell positions (`lo > hi` when none).
    pub lo: i64,
    pub hi: i64,
    pub ports: Vec<Port>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::MalformedPresentation(msg.into())
}

impl PeriodicPresentation {
    pub fn from_file(f: &PresentationFile) -> Result<Self> {
        let prefix = match &f.prefix {
            Some(p) => Multigraph::try_from(p.clone())?,
            None => Multigraph::default(),
        };
        if f.direction == Direction::TwoWay && prefix.vertex_count() > 0 {
            return Err(bad("a prefix is only allowed for one-way presentations"));
        }
        let cell = Multigraph::try_from(f.cell.clone())?;
        for v in cell.vertex_ids().iter().chain(prefix.vertex_ids()) {
            if v.contains('@') || v.starts_with('~') {
                return Err(bad(format!("vertex id `{v}` may not contain `@` or start with `~`")));
            }
        }
        for e in cell.edges().iter().chain(prefix.edges()) {
            if e.id.contains('@') {
                return Err(bad(format!("edge id `{}` may not contain `@`", e.id)));
            }
        }
        let mut glue = Vec::new();
        let mut prefix_glue = Vec::new();
        for (k, entry) in f.glue.iter().enumerate() {
            if entry.len() != 2 && entry.len() != 3 {
                return Err(bad(format!("glue entry {k} must have 2 or 3 strings")));
            }
            let split = |s: &str| -> Result<(String, String)> {
                let (scope, name) = s
                    .split_once('.')
                    .ok_or_else(|| bad(format!("glue port `{s}` must look like `cell.x`")))?;
                Ok((scope.to_string(), name.to_string()))
            };
            let (s0, a) = split(&entry[0])?;
            let (s1, b) = split(&entry[1])?;
            let port = |g: &Multigraph, name: &str| {
                g.vertex_ix(name)
                    .ok_or_else(|| bad(format!("glue entry {k}: unknown port `{name}`")))
            };
            match (s0.as_str(), s1.as_str()) {
                ("cell", "next") => glue.push(Glue {
                    id: entry.get(2).cloned().unwrap_or_else(|| format!("g{}", glue.len())),
                    from: port(&cell, &a)?,
                    to: port(&cell, &b)?,
                }),
                ("prefix", "cell") => {
                    if f.prefix.is_none() {
                        return Err(bad(format!("glue entry {k} refers to a missing prefix")));
                    }
                    prefix_glue.push(Glue {
                        id: entry
                            .get(2)
                            .cloned()
                            .unwrap_or_else(|| format!("pg{}", prefix_glue.len())),
                        from: port(&prefix, &a)?,
                        to: port(&cell, &b)?,
                    })
                }
                _ => {
                    return Err(bad(format!(
                        "glue entry {k}: expected `cell.x`→`next.y` or `prefix.p`→`cell.y`"
                    )))
                }
            }
        }
        let mut ids: Vec<&str> = glue.iter().map(|g| g.id.as_str()).collect();
        ids.extend(cell.edges().iter().map(|e| e.id.as_str()));
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(bad(format!("edge id `{}` used twice in cell and glue", w[0])));
        }
        for g in &prefix_glue {
            if g.id.contains('@') || prefix.edge_ix(&g.id).is_some() {
                return Err(bad(format!("prefix glue id `{}` clashes", g.id)));
            }
        }
        if cell.vertex_count() == 0 && !glue.is_empty() {
            return Err(bad("glue on an empty cell"));
        }
        Ok(PeriodicPresentation {
            prefix,
            cell,
            glue,
            prefix_glue,
            direction: f.direction,
        })
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(text)?)
    }

    /// A presentation with an empty cell: just the finite graph `g`.
    pub fn finite(g: &Multigraph) -> Self {
        PeriodicPresentation {
            prefix: g.clone(),
            cell: Multigraph::default(),
            glue: Vec::new(),
            prefix_glue: Vec::new(),
            direction: Direction::OneWay,
        }
    }

    pub fn to_file(&self) -> PresentationFile {
        let mut glue: Vec<Vec<String>> = self
            .prefix_glue
            .iter()
            .map(|g| {
                vec![
                    format!("prefix.{}", self.prefix.vertex_id(g.from)),
                    format!("cell.{}", self.cell.vertex_id(g.to)),
                    g.id.clone(),
                ]
            })
            .collect();
        glue.extend(self.glue.iter().map(|g| {
            vec![
                format!("cell.{}", self.cell.vertex_id(g.from)),
                format!("next.{}", self.cell.vertex_id(g.to)),
                g.id.clone(),
            ]
        }));
        PresentationFile {
            prefix: (self.prefix.vertex_count() > 0).then(|| self.prefix.to_json()),
            cell: self.cell.to_json(),
            glue,
            direction: self.direction,
        }
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn prefix(&self) -> &Multigraph {
        &self.prefix
    }

    pub fn cell(&self) -> &Multigraph {
        &self.cell
    }

    /// True when there is no repeating part.
    pub fn is_finite(&self) -> bool {
        self.cell.vertex_count() == 0
    }

    /// Largest degree of any vertex of the infinite graph.
    pub fn max_degree(&self) -> usize {
        let mut cell_deg: Vec<usize> = (0..self.cell.vertex_count()).map(|v| self.cell.degree(v)).collect();
        for g in &self.glue {
            cell_deg[g.from] += 1;
            cell_deg[g.to] += 1;
        }
        for g in &self.prefix_glue {
            cell_deg[g.to] += 1;
        }
        let mut pre: Vec<usize> = (0..self.prefix.vertex_count()).map(|v| self.prefix.degree(v)).collect();
        for g in &self.prefix_glue {
            pre[g.from] += 1;
        }
        cell_deg.into_iter().chain(pre).max().unwrap_or(0)
    }

    pub fn cell_vertex_id(&self, v: usize, pos: i64) -> String {
        format!("{}@{pos}", self.cell.vertex_id(v))
    }

    fn glue_id(&self, k: usize, pos: i64) -> String {
        format!("{}@{pos}", self.glue[k].id)
    }

    /// Cell positions of the first `n + 1` copies, in materialization order.
    pub fn positions(&self, n: usize) -> Vec<i64> {
        if self.is_finite() {
            return Vec::new();
        }
        (0..=n as i64)
            .map(|t| match self.direction {
                Direction::OneWay => t,
                Direction::TwoWay => {
                    if t % 2 == 1 {
                        (t + 1) / 2
                    } else {
                        -t / 2
                    }
                }
            })
            .collect()
    }

    /// Inclusive cell range covered at depth `n`.
    pub fn range(&self, n: usize) -> (i64, i64) {
        let pos = self.positions(n);
        match (pos.iter().min(), pos.iter().max()) {
            (Some(&lo), Some(&hi)) => (lo, hi),
            _ => (0, -1),
        }
    }

    /// The prefix plus the first `n + 1` cell copies, with dangling glue ports.
    pub fn materialize(&self, n: usize) -> Result<Window> {
        let order = self.positions(n);
        let (lo, hi) = self.range(n);
        self.materialize_cells(&order, lo, hi)
    }

    /// The prefix plus all copies in `lo..=hi`, in ascending order.
    pub fn materialize_range(&self, lo: i64, hi: i64) -> Result<Window> {
        if self.is_finite() {
            return self.materialize_cells(&[], 0, -1);
        }
        if self.direction == Direction::OneWay && lo < 0 {
            return Err(Error::InvalidParameter(format!(
                "one-way presentation has no cell {lo}"
            )));
        }
        let order: Vec<i64> = (lo..=hi).collect();
        self.materialize_cells(&order, lo, hi)
    }

    fn materialize_cells(&self, order: &[i64], lo: i64, hi: i64) -> Result<Window> {
        let mut b = GraphBuilder::new();
        for v in self.prefix.vertex_ids() {
            b.add_vertex(v.clone())?;
        }
        for e in self.prefix.edges() {
            b.push_edge(e.id.clone(), e.u, e.v)?;
        }
        let cn = self.cell.vertex_count();
        let mut base: HashMap<i64, usize> = HashMap::new();
        for &pos in order {
            let start = b.vertex_count();
            base.insert(pos, start);
            for v in 0..cn {
                b.add_vertex(self.cell_vertex_id(v, pos))?;
            }
            for e in self.cell.edges() {
                b.push_edge(format!("{}@{pos}", e.id), start + e.u, start + e.v)?;
            }
            if pos == 0 {
                for g in &self.prefix_glue {
                    b.push_edge(g.id.clone(), g.from, start + g.to)?;
                }
            }
            // glue to already materialized neighbours
            if let Some(&left) = base.get(&(pos - 1)) {
                for (k, g) in self.glue.iter().enumerate() {
                    b.push_edge(self.glue_id(k, pos - 1), left + g.from, start + g.to)?;
                }
            }
            if let Some(&right) = base.get(&(pos + 1)) {
                for (k, g) in self.glue.iter().enumerate() {
                    b.push_edge(self.glue_id(k, pos), start + g.from, right + g.to)?;
                }
            }
        }
        let mut ports = Vec::new();
        if !order.is_empty() {
            if self.direction == Direction::TwoWay {
                for (k, g) in self.glue.iter().enumerate() {
                    ports.push(Port {
                        side: Side::Left,
                        edge_id: self.glue_id(k, lo - 1),
                        inner: base[&lo] + g.to,
                        outer_cell: lo - 1,
                        outer_vertex: g.from,
                    });
                }
            }
            for (k, g) in self.glue.iter().enumerate() {
                ports.push(Port {
                    side: Side::Right,
                    edge_id: self.glue_id(k, hi),
                    inner: base[&hi] + g.from,
                    outer_cell: hi + 1,
                    outer_vertex: g.to,
                });
            }
        } else if !self.is_finite() {
            // prefix only: its glue dangles into cell 0
            for g in &self.prefix_glue {
                ports.push(Port {
                    side: Side::Right,
                    edge_id: g.id.clone(),
                    inner: g.from,
                    outer_cell: 0,
                    outer_vertex: g.to,
                });
            }
        }
        Ok(Window {
            graph: b.build(),
            lo,
            hi,
            ports,
        })
    }

    /// Component labels of cell vertices in the one-sided tail starting at a
    /// copy of the cell and running towards `side`, restricted to that first copy.
    ///
    /// Connectivity inside the first `L` copies coarsens as `L` grows and is
    /// driven by a finite-state transfer (the partition of first copy plus last
    /// copy). Once that state repeats, the restriction to the first copy is final.
    pub fn tail_partition(&self, side: Side) -> Vec<usize> {
        let cn = self.cell.vertex_count();
        let mut seen: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        let add_cell = |uf: &mut UnionFind, t: usize| {
            let start = uf.grow(cn);
            for e in self.cell.edges() {
                uf.union(start + e.u, start + e.v);
            }
            if t > 0 {
                let prev = start - cn;
                for g in &self.glue {
                    // towards the right copy t-1 glues to copy t via from -> to
                    let (a, b) = match side {
                        Side::Right => (prev + g.from, start + g.to),
                        Side::Left => (prev + g.to, start + g.from),
                    };
                    uf.union(a, b);
                }
            }
            start
        };
        let mut uf = UnionFind::new(0);
        let mut t = 0;
        loop {
            let start = add_cell(&mut uf, t);
            let first = canonical_labels(&mut uf, 0..cn);
            let both = canonical_labels(&mut uf, (0..cn).chain(start..start + cn));
            let state = (both[..cn].to_vec(), both[cn..].to_vec());
            if seen.contains(&state) {
                return first;
            }
            seen.push(state);
            t += 1;
        }
    }
}

fn canonical_labels(uf: &mut UnionFind, items: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut map = HashMap::new();
    items
        .map(|x| {
            let r = uf.find(x);
            let next = map.len();
            *map.entry(r).or_insert(next)
        })
        .collect()
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn grow(&mut self, k: usize) -> usize {
        let start = self.parent.len();
        self.parent.extend(start..start + k);
        start
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn double_ray() -> PeriodicPresentation {
        PeriodicPresentation::parse_json(
            r#"{"cell":{"vertices":["v"],"edges":[]},"glue":[["cell.v","next.v"]],"direction":"two-way"}"#,
        )
        .unwrap()
    }

    #[test]
    fn double_ray_depth_three_is_a_path() {
        let w = double_ray().materialize(3).unwrap();
        assert_eq!(w.graph.vertex_count(), 4);
        assert_eq!(w.graph.edge_count(), 3);
        assert_eq!((w.lo, w.hi), (-1, 2));
        assert_eq!(w.ports.len(), 2);
        assert!(w.graph.is_connected());
        assert_eq!(w.graph.vertex_ids(), &["v@0", "v@1", "v@-1", "v@2"]);
    }

    #[test]
    fn windows_extend_as_prefixes() {
        let p = double_ray();
        let a = p.materialize(2).unwrap().graph;
        let b = p.materialize(3).unwrap().graph;
        assert_eq!(&b.vertex_ids()[..a.vertex_count()], a.vertex_ids());
        for (x, y) in a.edges().iter().zip(b.edges()) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn malformed_glue_is_rejected() {
        for text in [
            r#"{"cell":{"vertices":["v"],"edges":[]},"glue":[["cell.w","next.v"]],"direction":"two-way"}"#,
            r#"{"cell":{"vertices":["v"],"edges":[]},"glue":[["cell.v"]],"direction":"two-way"}"#,
            r#"{"cell":{"vertices":["v"],"edges":[]},"glue":[["prefix.v","cell.v"]],"direction":"one-way"}"#,
            r#"{"prefix":{"vertices":["p"],"edges":[]},"cell":{"vertices":["v"],"edges":[]},"glue":[],"direction":"two-way"}"#,
            r#"{"cell":{"vertices":["v"],"edges":[]},"glue":[["cellv","next.v"]],"direction":"one-way"}"#,
        ] {
            assert!(matches!(
                PeriodicPresentation::parse_json(text),
                Err(Error::MalformedPresentation(_))
            ), "{text}");
        }
    }

    #[test]
    fn tail_partition_detects_split_tails() {
        // two parallel rays that never meet
        let p = PeriodicPresentation::parse_json(
            r#"{"cell":{"vertices":["a","b"],"edges":[]},"glue":[["cell.a","next.a"],["cell.b","next.b"]],"direction":"one-way"}"#,
        )
        .unwrap();
        assert_eq!(p.tail_partition(Side::Right), vec![0, 1]);
        // two interleaved chains: a0-b1-c1-a2-... and b0-c0-a1-b2-...
        let q = PeriodicPresentation::parse_json(
            r#"{"cell":{"vertices":["a","b","c"],"edges":[["x","b","c"]]},"glue":[["cell.a","next.b"],["cell.c","next.a"]],"direction":"one-way"}"#,
        )
        .unwrap();
        assert_eq!(q.tail_partition(Side::Right), vec![0, 1, 1]);
        assert_eq!(q.tail_partition(Side::Left), vec![0, 1, 1]);
        // rails joined only by a diagonal into the next copy
        let r = PeriodicPresentation::parse_json(
            r#"{"cell":{"vertices":["a","b"],"edges":[]},"glue":[["cell.a","next.a"],["cell.b","next.b"],["cell.a","next.b"]],"direction":"one-way"}"#,
        )
        .unwrap();
        assert_eq!(r.tail_partition(Side::Right), vec![0, 0]);
    }

    #[test]
    fn file_round_trip() {
        let p = double_ray();
        assert_eq!(PeriodicPresentation::from_file(&p.to_file()).unwrap(), p);
    }
}
