//! Canonical forms and isomorphism for small multigraphs with loops.
//!
//! Colour refinement on the multiplicity matrix, then individualization of
//! each vertex of the first non-singleton cell, recursively. Every discrete
//! leaf yields a vertex order; the canonical form is the smallest encoding of
//! the multiplicity matrix over all leaves.

use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, Multigraph};

/// Vertex count plus the upper triangle (diagonal = loops) of the
/// multiplicity matrix under the canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub cells: Vec<u16>,
}

impl CanonicalForm {
    /// Graph with vertices `v0..` and edges `e0..` listed by matrix position.
    pub fn to_graph(&self) -> Multigraph {
        let mut b = GraphBuilder::new();
        for i in 0..self.n {
            b.add_vertex(format!("v{i}")).expect("fresh");
        }
        let mut k = 0;
        let mut idx = 0;
        for i in 0..self.n {
            for j in i..self.n {
                for _ in 0..self.cells[idx] {
                    b.push_edge(format!("e{k}"), i, j).expect("fresh");
                    k += 1;
                }
                idx += 1;
            }
        }
        b.build()
    }
}

fn matrix(g: &Multigraph) -> Vec<Vec<u16>> {
    let n = g.vertex_count();
    let mut m = vec![vec![0u16; n]; n];
    for e in g.edges() {
        m[e.u][e.v] += 1;
        if e.u != e.v {
            m[e.v][e.u] += 1;
        }
    }
    m
}

/// Refines the ordered partition given as a colour per vertex (colours are
/// cell ranks) until stable.
fn refine(m: &[Vec<u16>], mut colour: Vec<usize>) -> Vec<usize> {
    let n = m.len();
    loop {
        let cells = colour.iter().max().map_or(0, |c| c + 1);
        let mut sig: Vec<(usize, Vec<(usize, u16)>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(usize, u16)> = (0..n)
                    .filter(|&w| m[v][w] > 0)
                    .map(|w| (colour[w], m[v][w]))
                    .collect();
                nb.sort_unstable();
                (colour[v], nb, v)
            })
            .collect();
        sig.sort();
        let mut next = vec![0; n];
        let mut c = 0;
        for i in 0..n {
            if i > 0 && (sig[i].0 != sig[i - 1].0 || sig[i].1 != sig[i - 1].1) {
                c += 1;
            }
            next[sig[i].2] = c;
        }
        let new_cells = if n == 0 { 0 } else { c + 1 };
        colour = next;
        if new_cells == cells {
            return colour;
        }
    }
}

fn encode(m: &[Vec<u16>], order: &[usize]) -> Vec<u16> {
    let n = order.len();
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            out.push(m[order[i]][order[j]]);
        }
    }
    out
}

fn search(m: &[Vec<u16>], colour: Vec<usize>, best: &mut Option<(Vec<u16>, Vec<usize>)>) {
    let n = m.len();
    let colour = refine(m, colour);
    let cells = colour.iter().max().map_or(0, |c| c + 1);
    if cells == n {
        let mut order = vec![0; n];
        for v in 0..n {
            order[colour[v]] = v;
        }
        let code = encode(m, &order);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, order));
        }
        return;
    }
    // first non-singleton cell
    let mut size = vec![0; cells];
    for &c in &colour {
        size[c] += 1;
    }
    let target = (0..cells).find(|&c| size[c] > 1).expect("not discrete");
    for v in (0..n).filter(|&v| colour[v] == target) {
        // split v off in front of its cell
        let next: Vec<usize> = (0..n)
            .map(|w| {
                let c = colour[w];
                if c > target || (c == target && w != v) {
                    c + 1
                } else {
                    c
                }
            })
            .collect();
        search(m, next, best);
    }
}

/// Canonical form and the vertex order realizing it.
pub fn canonical_labeling(g: &Multigraph) -> (CanonicalForm, Vec<usize>) {
    let m = matrix(g);
    let n = g.vertex_count();
    let mut best = None;
    search(&m, vec![0; n], &mut best);
    let (cells, order) = best.unwrap_or_default();
    (CanonicalForm { n, cells }, order)
}

pub fn canonical_form(g: &Multigraph) -> CanonicalForm {
    canonical_labeling(g).0
}

pub fn is_isomorphic(g: &Multigraph, h: &Multigraph) -> bool {
    g.vertex_count() == h.vertex_count()
        && g.edge_count() == h.edge_count()
        && canonical_form(g) == canonical_form(h)
}

/// A vertex bijection `g -> h` preserving edge multiplicities, if any.
pub fn find_isomorphism(g: &Multigraph, h: &Multigraph) -> Option<Vec<usize>> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let (cg, og) = canonical_labeling(g);
    let (ch, oh) = canonical_labeling(h);
    if cg != ch {
        return None;
    }
    let mut map = vec![0; g.vertex_count()];
    for (i, &v) in og.iter().enumerate() {
        map[v] = oh[i];
    }
    Some(map)
}

/// Cap on the number of vertex partitions explored by [`find_contraction_onto`].
const PARTITION_LIMIT: u64 = 5_000_000;

/// A partition of `g`'s vertices into connected classes whose quotient,
/// with the resulting loops removed, is isomorphic to `pattern`
/// (also without loops). Returns the class index of every vertex.
pub fn find_contraction_onto(g: &Multigraph, pattern: &Multigraph) -> Result<Option<Vec<usize>>> {
    let k = pattern.vertex_count();
    let n = g.vertex_count();
    if k > n || k == 0 {
        return Ok(None);
    }
    let target = canonical_form(&pattern.without_loops());
    let mut class = vec![0usize; n];
    let mut budget = PARTITION_LIMIT;
    let found = partitions(g, &target, k, 0, 0, &mut class, &mut budget);
    if budget == 0 && found.is_none() {
        return Err(Error::SizeGuard {
            what: "vertex partitions for contraction search",
            actual: PARTITION_LIMIT as usize,
            limit: PARTITION_LIMIT as usize,
        });
    }
    Ok(found)
}

fn partitions(
    g: &Multigraph,
    target: &CanonicalForm,
    k: usize,
    v: usize,
    used: usize,
    class: &mut Vec<usize>,
    budget: &mut u64,
) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    if *budget == 0 {
        return None;
    }
    if v == n {
        *budget -= 1;
        if used != k || !classes_connected(g, class, k) {
            return None;
        }
        let q = quotient_without_loops(g, class, k);
        return (canonical_form(&q) == *target).then(|| class.clone());
    }
    // every remaining vertex may open at most one new class
    if used + (n - v) < k {
        return None;
    }
    let top = if used < k { used + 1 } else { used };
    for c in 0..top {
        class[v] = c;
        if let Some(found) = partitions(g, target, k, v + 1, used.max(c + 1), class, budget) {
            return Some(found);
        }
    }
    None
}

pub(crate) fn classes_connected(g: &Multigraph, class: &[usize], k: usize) -> bool {
    let mut uf = crate::periodic::UnionFind::new(g.vertex_count());
    for e in g.edges() {
        if class[e.u] == class[e.v] {
            uf.union(e.u, e.v);
        }
    }
    let mut root = vec![usize::MAX; k];
    (0..g.vertex_count()).all(|v| {
        let r = uf.find(v);
        let c = class[v];
        if root[c] == usize::MAX {
            root[c] = r;
            true
        } else {
            root[c] == r
        }
    })
}

/// Contracts vertex classes, dropping the edges that become loops.
pub fn quotient_without_loops(g: &Multigraph, class: &[usize], k: usize) -> Multigraph {
    let mut b = GraphBuilder::new();
    for c in 0..k {
        b.add_vertex(format!("c{c}")).expect("fresh");
    }
    for e in g.edges() {
        if class[e.u] != class[e.v] {
            b.push_edge(e.id.clone(), class[e.u], class[e.v]).expect("fresh");
        }
    }
    b.build()
}
