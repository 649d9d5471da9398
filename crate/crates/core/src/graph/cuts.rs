use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{DirectedEdge, EdgeSubset, Multigraph};
use crate::error::{Error, Result};

/// Vertex cap for exhaustive cut enumeration.
pub const DEFAULT_CUT_VERTEX_LIMIT: usize = 20;

/// Cap on the number of degree-3 candidates for the dominating-set search.
const DOMINATING_CANDIDATE_LIMIT: usize = 24;

/// A bipartition `(A, B)` of the vertex set with its crossing edges oriented A → B.
/// Loops never cross.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrientedCut {
    in_a: Vec<bool>,
    crossing: Vec<DirectedEdge>,
}

impl OrientedCut {
    /// Builds the cut with side A given by the membership mask.
    pub fn from_side(g: &Multigraph, in_a: Vec<bool>) -> Result<Self> {
        if in_a.len() != g.vertex_count() {
            return Err(Error::NotACut(format!(
                "side mask has {} entries for {} vertices",
                in_a.len(),
                g.vertex_count()
            )));
        }
        if in_a.iter().all(|&b| b) || in_a.iter().all(|&b| !b) {
            return Err(Error::NotACut("both sides must be nonempty".into()));
        }
        let crossing = g
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| in_a[e.u] != in_a[e.v])
            .map(|(i, e)| {
                let (tail, head) = if in_a[e.u] { (e.u, e.v) } else { (e.v, e.u) };
                DirectedEdge {
                    edge: i,
                    tail,
                    head,
                }
            })
            .collect();
        Ok(OrientedCut { in_a, crossing })
    }

    pub fn from_side_ids<S: AsRef<str>>(g: &Multigraph, side_a: &[S]) -> Result<Self> {
        let mut in_a = vec![false; g.vertex_count()];
        for id in side_a {
            in_a[g.require_vertex(id.as_ref())?] = true;
        }
        Self::from_side(g, in_a)
    }

    /// The cut `({v}, V \ {v})`.
    pub fn vertex_cut(g: &Multigraph, v: usize) -> Result<Self> {
        let mut in_a = vec![false; g.vertex_count()];
        in_a[v] = true;
        Self::from_side(g, in_a)
    }

    pub fn in_a(&self, v: usize) -> bool {
        self.in_a[v]
    }

    pub fn side_mask(&self) -> &[bool] {
        &self.in_a
    }

    pub fn side_a(&self) -> Vec<usize> {
        (0..self.in_a.len()).filter(|&v| self.in_a[v]).collect()
    }

    pub fn side_b(&self) -> Vec<usize> {
        (0..self.in_a.len()).filter(|&v| !self.in_a[v]).collect()
    }

    pub fn crossing(&self) -> &[DirectedEdge] {
        &self.crossing
    }

    pub fn len(&self) -> usize {
        self.crossing.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossing.is_empty()
    }

    pub fn crossing_edges(&self) -> Vec<usize> {
        self.crossing.iter().map(|d| d.edge).collect()
    }

    pub fn crossing_ids(&self, g: &Multigraph) -> Vec<String> {
        self.crossing
            .iter()
            .map(|d| g.edge_id(d.edge).to_string())
            .collect()
    }

    /// The complementary cut `(B, A)` with every crossing edge reversed.
    pub fn reversed(&self) -> OrientedCut {
        OrientedCut {
            in_a: self.in_a.iter().map(|b| !b).collect(),
            crossing: self.crossing.iter().map(|d| d.reversed()).collect(),
        }
    }

    pub fn describe(&self, g: &Multigraph) -> String {
        let side = |want: bool| {
            (0..self.in_a.len())
                .filter(|&v| self.in_a[v] == want)
                .map(|v| g.vertex_id(v))
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("{{{}}}|{{{}}}", side(true), side(false))
    }
}

/// Iterator over all cuts of a connected graph, one per complementary pair.
pub struct CutIter<'g> {
    g: &'g Multigraph,
    next: u64,
    end: u64,
}

impl Iterator for CutIter<'_> {
    type Item = OrientedCut;

    fn next(&mut self) -> Option<OrientedCut> {
        if self.next >= self.end {
            return None;
        }
        let m = self.next;
        self.next += 1;
        let n = self.g.vertex_count();
        let in_a = (0..n)
            .map(|i| i == 0 || (m >> (n - 1 - i)) & 1 == 1)
            .collect();
        Some(OrientedCut::from_side(self.g, in_a).expect("proper nonempty side by construction"))
    }
}

/// All cuts `(A, V\A)` of a connected graph, with the first vertex always in A,
/// in lexicographic order of A's characteristic vector.
pub fn enumerate_cuts(g: &Multigraph) -> Result<CutIter<'_>> {
    enumerate_cuts_with_limit(g, DEFAULT_CUT_VERTEX_LIMIT)
}

pub fn enumerate_cuts_with_limit(g: &Multigraph, max_vertices: usize) -> Result<CutIter<'_>> {
    let n = g.vertex_count();
    if n > max_vertices {
        return Err(Error::SizeGuard {
            what: "vertex count for cut enumeration",
            actual: n,
            limit: max_vertices,
        });
    }
    g.require_connected()?;
    let end = if n == 0 { 0 } else { (1u64 << (n - 1)) - 1 };
    Ok(CutIter { g, next: 0, end })
}

/// Membership in the cycle space over GF(2): every vertex has even degree in `f`.
pub fn is_cycle_space_member(g: &Multigraph, f: &EdgeSubset) -> bool {
    f.degrees(g).iter().all(|d| d % 2 == 0)
}

/// Minimum number of edges in a cut, or `None` for a single vertex (no cuts).
///
/// Computed as the minimum over `t` of a unit-capacity max-flow from the
/// first vertex, which equals the minimum over all cuts.
pub fn edge_connectivity(g: &Multigraph) -> Result<Option<usize>> {
    g.require_connected()?;
    let n = g.vertex_count();
    if n <= 1 {
        return Ok(None);
    }
    let best = (1..n).map(|t| max_flow_unit(g, 0, t)).min();
    Ok(best)
}

pub fn is_bridgeless(g: &Multigraph) -> Result<bool> {
    Ok(edge_connectivity(g)?.is_none_or(|l| l >= 2))
}

fn max_flow_unit(g: &Multigraph, s: usize, t: usize) -> usize {
    // residual capacity per (edge, direction); direction 0 = u->v
    let m = g.edge_count();
    let mut used = vec![0i32; m]; // net flow u->v, in [-1, 1]
    let mut total = 0;
    loop {
        let n = g.vertex_count();
        let mut pred: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            if x == t {
                break;
            }
            for &e in g.incident(x) {
                let edge = g.edge(e);
                if edge.is_loop() {
                    continue;
                }
                let y = edge.other(x);
                let cap = if x == edge.u { 1 - used[e] } else { 1 + used[e] };
                if cap > 0 && !seen[y] {
                    seen[y] = true;
                    pred[y] = Some((x, e));
                    q.push_back(y);
                }
            }
        }
        if !seen[t] {
            return total;
        }
        let mut y = t;
        while let Some((x, e)) = pred[y] {
            if x == g.edge(e).u {
                used[e] += 1;
            } else {
                used[e] -= 1;
            }
            y = x;
        }
        total += 1;
    }
}

/// A connected, edge-dominating set of degree-3 vertices, if one exists.
///
/// Candidate subsets of the degree-3 vertices are tried from the full set
/// downwards in lexicographic order of their characteristic vectors.
pub fn edge_dominating_degree3_set(g: &Multigraph) -> Result<Option<Vec<usize>>> {
    if let Some(e) = g.edges().iter().find(|e| e.is_loop()) {
        return Err(Error::Precondition(format!(
            "graph must be loop-free (loop `{}`)",
            e.id
        )));
    }
    let candidates: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| g.degree(v) == 3)
        .collect();
    let c = candidates.len();
    if c == 0 {
        return Ok(None);
    }
    if c > DOMINATING_CANDIDATE_LIMIT {
        return Err(Error::SizeGuard {
            what: "degree-3 candidates",
            actual: c,
            limit: DOMINATING_CANDIDATE_LIMIT,
        });
    }
    let n = g.vertex_count();
    for mask in (1..(1u64 << c)).rev() {
        let mut in_u = vec![false; n];
        for (i, &v) in candidates.iter().enumerate() {
            if mask >> (c - 1 - i) & 1 == 1 {
                in_u[v] = true;
            }
        }
        if is_connected_dominating(g, &in_u) {
            return Ok(Some((0..n).filter(|&v| in_u[v]).collect()));
        }
    }
    Ok(None)
}

/// True when `in_u` meets every edge and induces a connected subgraph.
pub(crate) fn is_connected_dominating(g: &Multigraph, in_u: &[bool]) -> bool {
    if !g.edges().iter().all(|e| in_u[e.u] || in_u[e.v]) {
        return false;
    }
    let Some(start) = in_u.iter().position(|&b| b) else {
        return false;
    };
    let mut seen = vec![false; in_u.len()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &e in g.incident(x) {
            let y = g.edge(e).other(x);
            if in_u[y] && !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    (0..in_u.len()).all(|v| !in_u[v] || seen[v])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn triangle_has_three_cuts_of_two_edges() {
        let g = named::triangle();
        let cuts: Vec<_> = enumerate_cuts(&g).unwrap().collect();
        assert_eq!(cuts.len(), 3);
        assert!(cuts.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn single_edge_has_one_cut() {
        let g = named::path(2);
        let cuts: Vec<_> = enumerate_cuts(&g).unwrap().collect();
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].len(), 1);
    }

    #[test]
    fn path_cuts_in_lexicographic_order() {
        let g = named::path(3);
        let got: Vec<(Vec<usize>, usize)> = enumerate_cuts(&g)
            .unwrap()
            .map(|c| (c.side_a(), c.len()))
            .collect();
        assert_eq!(got, vec![(vec![0], 1), (vec![0, 2], 2), (vec![0, 1], 1)]);
    }

    #[test]
    fn guard_and_connectivity_errors() {
        let g = named::path(5);
        assert!(matches!(
            enumerate_cuts_with_limit(&g, 4),
            Err(Error::SizeGuard { .. })
        ));
        let h = Multigraph::from_strs(&["a", "b"], &[]).unwrap();
        assert!(matches!(enumerate_cuts(&h), Err(Error::Disconnected(..))));
    }

    #[test]
    fn loops_never_cross() {
        let g = Multigraph::from_strs(
            &["a", "b"],
            &[("l", "a", "a"), ("e", "a", "b"), ("m", "b", "b")],
        )
        .unwrap();
        let cuts: Vec<_> = enumerate_cuts(&g).unwrap().collect();
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].crossing_ids(&g), vec!["e"]);
    }

    #[test]
    fn cycle_space_examples() {
        let tri = named::triangle();
        assert!(is_cycle_space_member(&tri, &EdgeSubset::full(&tri)));
        let p = named::path(3);
        assert!(!is_cycle_space_member(&p, &EdgeSubset::from_indices(&p, [0])));
    }

    #[test]
    fn connectivity_examples() {
        assert_eq!(edge_connectivity(&named::triangle()).unwrap(), Some(2));
        assert_eq!(edge_connectivity(&named::path(2)).unwrap(), Some(1));
        assert_eq!(edge_connectivity(&named::complete(4)).unwrap(), Some(3));
        assert!(!is_bridgeless(&named::path(2)).unwrap());
        assert!(is_bridgeless(&named::petersen()).unwrap());
    }

    #[test]
    fn dominating_sets() {
        assert_eq!(
            edge_dominating_degree3_set(&named::complete(4)).unwrap(),
            Some(vec![0, 1, 2, 3])
        );
        assert_eq!(edge_dominating_degree3_set(&named::path(3)).unwrap(), None);
        assert_eq!(
            edge_dominating_degree3_set(&named::complete_bipartite(3, 3)).unwrap(),
            Some((0..6).collect())
        );
    }
}
