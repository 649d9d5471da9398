//! Exhaustive corpus of small connected multigraphs (loops and parallel edges
//! allowed), one representative per isomorphism class.
//!
//! Every connected multigraph with `m + 1` edges arises from one with `m`
//! edges by adding a loop, an edge between existing vertices, or a pendant
//! edge to a new vertex: remove a loop, a non-bridge edge, or a leaf edge.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::graph::{GraphBuilder, Multigraph};
use crate::iso::{canonical_form, CanonicalForm};

fn extend(form: &CanonicalForm) -> Vec<CanonicalForm> {
    let g = form.to_graph();
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut with = |u: usize, v: usize, fresh: bool| {
        let mut b = GraphBuilder::new();
        for id in g.vertex_ids() {
            b.add_vertex(id.clone()).expect("fresh");
        }
        if fresh {
            b.add_vertex(format!("v{n}")).expect("fresh");
        }
        for e in g.edges() {
            b.push_edge(e.id.clone(), e.u, e.v).expect("fresh");
        }
        b.push_edge(format!("e{}", g.edge_count()), u, v).expect("fresh");
        out.push(canonical_form(&b.build()));
    };
    for u in 0..n {
        for v in u..n {
            with(u, v, false);
        }
        with(u, n, true);
    }
    out
}

/// Isomorphism classes of connected multigraphs with exactly `m` edges, for
/// every `m <= max_edges`, as canonical graphs (`v0..`, `e0..`), grouped by
/// edge count and sorted by canonical form.
pub fn connected_multigraphs_by_size(max_edges: usize) -> Vec<Vec<Multigraph>> {
    let single = canonical_form(&Multigraph::from_strs(&["v0"], &[]).expect("valid"));
    let mut levels: Vec<Vec<CanonicalForm>> = vec![vec![single]];
    for _ in 0..max_edges {
        let prev = levels.last().expect("nonempty");
        let candidates: Vec<CanonicalForm> = prev.par_iter().flat_map_iter(extend).collect();
        let mut seen = HashSet::new();
        let mut next: Vec<CanonicalForm> = candidates.into_iter().filter(|f| seen.insert(f.clone())).collect();
        next.sort();
        levels.push(next);
    }
    levels
        .into_iter()
        .map(|lv| lv.iter().map(CanonicalForm::to_graph).collect())
        .collect()
}

/// All classes with at most `max_edges` edges, smallest first.
pub fn connected_multigraphs(max_edges: usize) -> Vec<Multigraph> {
    connected_multigraphs_by_size(max_edges)
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_levels() {
        let sizes: Vec<usize> = connected_multigraphs_by_size(2).iter().map(Vec::len).collect();
        // two edges: two loops, a digon, an edge with a loop, a path
        assert_eq!(sizes, vec![1, 2, 4]);
        assert!(connected_multigraphs(3).iter().all(|g| g.is_connected()));
    }
}
