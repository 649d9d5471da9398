//! Backtracking flow search.
//!
//! Edges are decided in input order and values tried in alphabet order, so the
//! first flow found is the lexicographically first one. Whenever a vertex has a
//! single undecided non-loop edge left, that edge's value is forced by the
//! vertex law; this only prunes dead branches and never changes which flow is
//! found first. Loops are unconstrained and take the first alphabet value.
//!
//! The parallel variant enumerates the search tree down to a fixed number of
//! branching decisions, then solves the resulting prefixes concurrently and
//! keeps the first success in prefix order. Prefixes are lexicographically
//! ordered, so the answer is the sequential one.

use rayon::prelude::*;

use super::EdgeAssignment;
use crate::graph::Multigraph;
use crate::group::{Arith, FlowAlphabet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; 0 or 1 runs sequentially.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { threads: 1 }
    }
}

/// Lexicographically first A-flow, if any.
pub fn find_flow(g: &Multigraph, a: &FlowAlphabet) -> Option<EdgeAssignment> {
    find_flow_with(g, a, SearchOptions::default())
}

pub fn find_flow_with(
    g: &Multigraph,
    a: &FlowAlphabet,
    opts: SearchOptions,
) -> Option<EdgeAssignment> {
    let mut root = Solver::new(g, a);
    if !root.init() || !root.balanced() {
        return None;
    }
    let values = if opts.threads <= 1 {
        root.dfs(0).then(|| root.values())
    } else {
        parallel(&root, opts.threads)
    };
    values.map(|v| EdgeAssignment::new(a.carrier().clone(), v))
}

fn parallel(root: &Solver<'_>, threads: usize) -> Option<Vec<i64>> {
    let target = threads * 16;
    let mut frontier = vec![root.clone()];
    // expand breadth-first, level by level, keeping lexicographic order
    loop {
        if frontier.len() >= target {
            break;
        }
        let mut next = Vec::new();
        let mut grew = false;
        for s in frontier {
            match s.next_open(0) {
                None => next.push(s),
                Some(e) => {
                    grew = true;
                    for &x in s.alphabet {
                        let mut child = s.clone();
                        if child.assign(e, x) && child.balanced() {
                            next.push(child);
                        }
                    }
                }
            }
        }
        frontier = next;
        if !grew || frontier.is_empty() {
            break;
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .ok()?;
    pool.install(|| {
        frontier.into_par_iter().find_map_first(|mut s| {
            let start = s.next_open(0).unwrap_or(0);
            s.dfs(start).then(|| s.values())
        })
    })
}

/// Alphabet membership for integer codes, as a dense table.
#[derive(Clone)]
struct Membership {
    offset: i64,
    table: Vec<bool>,
}

impl Membership {
    fn new(codes: &[i64]) -> Self {
        let lo = *codes.iter().min().expect("nonempty alphabet");
        let hi = *codes.iter().max().expect("nonempty alphabet");
        let mut table = vec![false; (hi - lo + 1) as usize];
        for &c in codes {
            table[(c - lo) as usize] = true;
        }
        Membership { offset: lo, table }
    }

    #[inline]
    fn contains(&self, c: i64) -> bool {
        let i = c - self.offset;
        i >= 0 && (i as usize) < self.table.len() && self.table[i as usize]
    }
}

#[derive(Clone)]
struct Solver<'a> {
    g: &'a Multigraph,
    arith: Arith,
    alphabet: &'a [i64],
    allowed: Membership,
    value: Vec<Option<i64>>,
    sum: Vec<i64>,
    free: Vec<u32>,
    trail: Vec<usize>,
}

impl<'a> Solver<'a> {
    fn new(g: &'a Multigraph, a: &'a FlowAlphabet) -> Self {
        let mut free = vec![0u32; g.vertex_count()];
        for e in g.edges().iter().filter(|e| !e.is_loop()) {
            free[e.u] += 1;
            free[e.v] += 1;
        }
        Solver {
            g,
            arith: a.carrier().arith(),
            alphabet: a.codes(),
            allowed: Membership::new(a.codes()),
            value: vec![None; g.edge_count()],
            sum: vec![0; g.vertex_count()],
            free,
            trail: Vec::new(),
        }
    }

    /// Fixes loops and checks isolated vertices; false if already infeasible.
    fn init(&mut self) -> bool {
        let first = self.alphabet[0];
        for (e, edge) in self.g.edges().iter().enumerate() {
            if edge.is_loop() {
                self.value[e] = Some(first);
            }
        }
        // a vertex with exactly one non-loop edge forces that edge to zero
        for v in 0..self.g.vertex_count() {
            if self.free[v] == 1 {
                let e = self.open_edge_at(v);
                let y = self.forced_value(v, e);
                if !self.assign(e, y) {
                    return false;
                }
            }
        }
        true
    }

    fn values(&self) -> Vec<i64> {
        self.value.iter().map(|v| v.expect("complete")).collect()
    }

    fn next_open(&self, from: usize) -> Option<usize> {
        (from..self.value.len()).find(|&e| self.value[e].is_none())
    }

    fn open_edge_at(&self, v: usize) -> usize {
        *self
            .g
            .incident(v)
            .iter()
            .find(|&&e| self.value[e].is_none() && !self.g.edge(e).is_loop())
            .expect("free count says one edge is open")
    }

    /// Value on the canonical orientation of `e` that zeroes the outflow at `v`.
    fn forced_value(&self, v: usize, e: usize) -> i64 {
        let need = self.arith.neg(self.sum[v]);
        if self.g.edge(e).tail() == v {
            need
        } else {
            self.arith.neg(need)
        }
    }

    /// Assigns `x` to `e` and propagates forced values; false on contradiction.
    /// On failure the caller must undo to its own mark.
    fn assign(&mut self, e: usize, x: i64) -> bool {
        let mut queue = vec![(e, x)];
        while let Some((e, x)) = queue.pop() {
            if let Some(y) = self.value[e] {
                if y != x {
                    return false;
                }
                continue;
            }
            if !self.allowed.contains(x) {
                return false;
            }
            self.value[e] = Some(x);
            self.trail.push(e);
            let edge = self.g.edge(e);
            let (t, h) = (edge.tail(), edge.head());
            self.sum[t] = self.arith.add(self.sum[t], x);
            self.sum[h] = self.arith.sub(self.sum[h], x);
            self.free[t] -= 1;
            self.free[h] -= 1;
            for w in [t, h] {
                match self.free[w] {
                    0 if self.sum[w] != 0 => return false,
                    1 => {
                        let f = self.open_edge_at(w);
                        queue.push((f, self.forced_value(w, f)));
                    }
                    _ => {}
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let e = self.trail.pop().expect("nonempty");
            let x = self.value[e].take().expect("assigned");
            let edge = self.g.edge(e);
            let (t, h) = (edge.tail(), edge.head());
            self.sum[t] = self.arith.sub(self.sum[t], x);
            self.sum[h] = self.arith.add(self.sum[h], x);
            self.free[t] += 1;
            self.free[h] += 1;
        }
    }

    /// Necessary condition for completing the assignment: the vertices joined
    /// by undecided edges must have demands summing to zero, since the
    /// undecided edges inside such a component cancel out of the total.
    fn balanced(&self) -> bool {
        let n = self.g.vertex_count();
        let mut uf = crate::periodic::UnionFind::new(n);
        for (e, edge) in self.g.edges().iter().enumerate() {
            if self.value[e].is_none() && !edge.is_loop() {
                uf.union(edge.u, edge.v);
            }
        }
        let mut total = vec![0i64; n];
        for v in (0..n).filter(|&v| self.free[v] > 0) {
            let r = uf.find(v);
            total[r] = self.arith.add(total[r], self.sum[v]);
        }
        total.iter().all(|&t| t == 0)
    }

    fn dfs(&mut self, from: usize) -> bool {
        let Some(e) = self.next_open(from) else {
            return true;
        };
        for i in 0..self.alphabet.len() {
            let x = self.alphabet[i];
            let mark = self.trail.len();
            if self.assign(e, x) && self.balanced() && self.dfs(e + 1) {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::verify_flow;
    use crate::graph::named;
    use crate::group::FiniteAbelianGroup;

    fn nz(s: &str) -> FlowAlphabet {
        FlowAlphabet::nonzero(&s.parse::<FiniteAbelianGroup>().unwrap())
    }

    #[test]
    fn named_verdicts() {
        assert!(find_flow(&named::complete_bipartite(3, 3), &nz("Z3")).is_some());
        assert!(find_flow(&named::petersen(), &nz("Z4")).is_none());
        assert!(find_flow(&named::petersen(), &nz("Z2xZ2")).is_none());
        let f = find_flow(&named::petersen(), &nz("Z5")).unwrap();
        assert!(verify_flow(&named::petersen(), &f, &nz("Z5"), None)
            .unwrap()
            .is_valid());
        assert!(find_flow(&named::complete(4), &nz("Z3")).is_none());
        assert!(find_flow(&named::complete(4), &nz("Z4")).is_some());
    }

    #[test]
    fn loops_take_the_first_value() {
        let g = crate::graph::Multigraph::from_strs(
            &["a", "b"],
            &[("x", "a", "b"), ("l", "b", "b"), ("y", "a", "b")],
        )
        .unwrap();
        let f = find_flow(&g, &nz("Z3")).unwrap();
        assert_eq!(f.values(), &[1, 1, 2]);
    }

    #[test]
    fn parallel_matches_sequential() {
        for (g, a) in [
            (named::petersen(), nz("Z5")),
            (named::complete(5), nz("Z3")),
            (named::petersen(), nz("Z4")),
            (named::wheel(5), nz("Z2xZ2")),
        ] {
            let seq = find_flow(&g, &a);
            for t in [2, 4] {
                assert_eq!(find_flow_with(&g, &a, SearchOptions { threads: t }), seq);
            }
        }
    }

    #[test]
    fn single_vertex_and_empty_graph() {
        let g = named::single_loop();
        assert_eq!(find_flow(&g, &nz("Z2")).unwrap().values(), &[1]);
        let lone = named::path(1);
        assert!(find_flow(&lone, &nz("Z2")).unwrap().is_empty());
    }
}
