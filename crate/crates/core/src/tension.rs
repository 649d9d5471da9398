//! Tensions: assignments summing to zero around every cycle.
//!
//! Values live in an abelian group, so zero sums on a fundamental cycle basis
//! give zero sums on every cycle. Equivalently a tension is a potential
//! difference, `f(u -> v) = p(v) - p(u)`, which is what the search exploits:
//! it keeps a potential per component in a weighted union-find.

use crate::error::{Error, Result};
use crate::flow::EdgeAssignment;
use crate::graph::{DirectedEdge, Multigraph};
use crate::group::{Arith, Carrier, FiniteAbelianGroup, FlowAlphabet, GroupElement};
use crate::infinite::{CertificateKind, ObstructionCertificate, Verdict};
use crate::periodic::PeriodicPresentation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TensionCheck {
    Valid,
    /// The first fundamental cycle with a nonzero sum, traversed from its chord.
    CycleViolated { cycle: Vec<DirectedEdge>, sum: i64 },
}

impl TensionCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, TensionCheck::Valid)
    }

    pub fn describe(&self, g: &Multigraph, carrier: &Carrier) -> String {
        match self {
            TensionCheck::Valid => "valid".into(),
            TensionCheck::CycleViolated { cycle, sum } => format!(
                "cycle {} sums to {}",
                signed_ids(g, cycle).join(" "),
                carrier.display_code(*sum)
            ),
        }
    }
}

/// `+id` when the traversal agrees with the canonical orientation, `-id` otherwise.
pub fn signed_ids(g: &Multigraph, cycle: &[DirectedEdge]) -> Vec<String> {
    cycle
        .iter()
        .map(|d| {
            let s = if d.is_canonical() { '+' } else { '-' };
            format!("{s}{}", g.edge_id(d.edge))
        })
        .collect()
}

/// One cycle per non-forest edge of a BFS spanning forest (loops included):
/// the chord along its canonical orientation, then the forest path back.
pub fn fundamental_cycles(g: &Multigraph) -> Vec<Vec<DirectedEdge>> {
    let n = g.vertex_count();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut tree = vec![false; g.edge_count()];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &e in g.incident(x) {
                let y = g.edge(e).other(x);
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    parent[y] = Some(e);
                    tree[e] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    let up = |x: usize| {
        let e = parent[x].expect("non-root");
        let p = g.edge(e).other(x);
        (DirectedEdge { edge: e, tail: x, head: p }, p)
    };
    let mut cycles = Vec::new();
    for (e, edge) in g.edges().iter().enumerate() {
        if tree[e] {
            continue;
        }
        let (t, h) = (edge.tail(), edge.head());
        let mut cycle = vec![g.forward(e)];
        // climb from h and t to their common ancestor
        let (mut a, mut b) = (h, t);
        let mut down = Vec::new();
        while a != b {
            if depth[a] >= depth[b] {
                let (d, p) = up(a);
                cycle.push(d);
                a = p;
            } else {
                let (d, p) = up(b);
                down.push(d.reversed());
                b = p;
            }
        }
        cycle.extend(down.into_iter().rev());
        cycles.push(cycle);
    }
    cycles
}

/// Checks zero sums on the fundamental cycles.
pub fn verify_tension(g: &Multigraph, f: &EdgeAssignment) -> Result<TensionCheck> {
    if f.len() != g.edge_count() {
        return Err(Error::InvalidParameter(format!(
            "{} values for {} edges",
            f.len(),
            g.edge_count()
        )));
    }
    if let Some(e) = f.first_foreign_code() {
        return Err(Error::BadEdge {
            edge: g.edge_id(e).to_string(),
            reason: format!("code {} is not an element of {}", f.value(e), f.carrier().label()),
        });
    }
    let arith = f.carrier().arith();
    for cycle in fundamental_cycles(g) {
        let sum = cycle.iter().fold(0, |acc, d| arith.add(acc, f.along(*d)));
        if sum != 0 {
            return Ok(TensionCheck::CycleViolated { cycle, sum });
        }
    }
    Ok(TensionCheck::Valid)
}

/// `f(u -> v) = p(v) - p(u)` on every edge.
pub fn tension_from_potential(
    g: &Multigraph,
    h: &FiniteAbelianGroup,
    potential: &[GroupElement],
) -> Result<EdgeAssignment> {
    if potential.len() != g.vertex_count() {
        return Err(Error::InvalidParameter(format!(
            "{} potentials for {} vertices",
            potential.len(),
            g.vertex_count()
        )));
    }
    let values = g
        .edges()
        .iter()
        .map(|e| {
            let d = h.sub(&potential[e.head()], &potential[e.tail()])?;
            Ok(h.index_of(&d)? as i64)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EdgeAssignment::new(Carrier::Group(h.clone()), values))
}

/// A potential realizing `f`, found by depth-first propagation from the
/// first vertex of each component (potential zero there).
pub fn potential_of(g: &Multigraph, f: &EdgeAssignment) -> Option<Vec<i64>> {
    if f.len() != g.edge_count() || f.first_foreign_code().is_some() {
        return None;
    }
    let arith = f.carrier().arith();
    let n = g.vertex_count();
    let mut p: Vec<Option<i64>> = vec![None; n];
    for root in 0..n {
        if p[root].is_some() {
            continue;
        }
        p[root] = Some(0);
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            let px = p[x].expect("set");
            for &e in g.incident(x) {
                let edge = g.edge(e);
                let y = edge.other(x);
                if p[y].is_none() {
                    let d = DirectedEdge { edge: e, tail: x, head: y };
                    p[y] = Some(arith.add(px, f.along(d)));
                    stack.push(y);
                }
            }
        }
    }
    let p: Vec<i64> = p.into_iter().map(|x| x.expect("all visited")).collect();
    g.edges()
        .iter()
        .enumerate()
        .all(|(e, edge)| f.value(e) == arith.sub(p[edge.head()], p[edge.tail()]))
        .then_some(p)
}

pub fn is_potential_difference(g: &Multigraph, f: &EdgeAssignment) -> bool {
    potential_of(g, f).is_some()
}

/// Union-find carrying `pot[v] = p(v) - p(parent[v])`, with an undo log.
struct Potentials {
    parent: Vec<usize>,
    pot: Vec<i64>,
    size: Vec<usize>,
    log: Vec<(usize, usize)>,
}

impl Potentials {
    fn new(n: usize) -> Self {
        Potentials {
            parent: (0..n).collect(),
            pot: vec![0; n],
            size: vec![1; n],
            log: Vec::new(),
        }
    }

    /// Root of `v` and `p(v) - p(root)`.
    fn find(&self, arith: &Arith, mut v: usize) -> (usize, i64) {
        let mut d = 0;
        while self.parent[v] != v {
            d = arith.add(d, self.pot[v]);
            v = self.parent[v];
        }
        (v, d)
    }

    /// Records `p(v) - p(u) = x` for `u`, `v` in different components.
    fn union(&mut self, arith: &Arith, u: usize, v: usize, x: i64) {
        let (ru, du) = self.find(arith, u);
        let (rv, dv) = self.find(arith, v);
        // p(rv) - p(ru) = x - dv + du
        let d = arith.add(arith.sub(x, dv), du);
        let (child, root, d) = if self.size[ru] >= self.size[rv] {
            (rv, ru, d)
        } else {
            (ru, rv, arith.neg(d))
        };
        self.parent[child] = root;
        self.pot[child] = d;
        self.size[root] += self.size[child];
        self.log.push((child, root));
    }

    fn undo(&mut self) {
        let (child, root) = self.log.pop().expect("nonempty log");
        self.parent[child] = child;
        self.pot[child] = 0;
        self.size[root] -= self.size[child];
    }

    /// Value forced on edge `e` when both ends share a component.
    fn forced(&self, arith: &Arith, g: &Multigraph, e: usize) -> Option<i64> {
        let edge = g.edge(e);
        let (rt, dt) = self.find(arith, edge.tail());
        let (rh, dh) = self.find(arith, edge.head());
        (rt == rh).then(|| arith.sub(dh, dt))
    }
}

struct TensionSearch<'a> {
    g: &'a Multigraph,
    alphabet: &'a [i64],
    arith: Arith,
    pots: Potentials,
    values: Vec<i64>,
}

impl TensionSearch<'_> {
    fn allowed(&self, x: i64) -> bool {
        self.alphabet.contains(&x)
    }

    /// Every later edge whose value is already forced must be admissible.
    fn lookahead(&self, from: usize) -> bool {
        (from..self.g.edge_count()).all(|e| match self.pots.forced(&self.arith, self.g, e) {
            Some(x) => self.allowed(x),
            None => true,
        })
    }

    fn dfs(&mut self, e: usize) -> bool {
        if e == self.g.edge_count() {
            return true;
        }
        if let Some(x) = self.pots.forced(&self.arith, self.g, e) {
            if !self.allowed(x) {
                return false;
            }
            self.values[e] = x;
            return self.dfs(e + 1);
        }
        let edge = self.g.edge(e).clone();
        for i in 0..self.alphabet.len() {
            let x = self.alphabet[i];
            self.pots.union(&self.arith, edge.tail(), edge.head(), x);
            self.values[e] = x;
            if self.lookahead(e + 1) && self.dfs(e + 1) {
                return true;
            }
            self.pots.undo();
        }
        false
    }
}

/// Lexicographically first A-tension (edges in input order, values in
/// alphabet order). Forest edges branch; chords are forced.
pub fn find_tension(g: &Multigraph, a: &FlowAlphabet) -> Result<Option<EdgeAssignment>> {
    let mut s = TensionSearch {
        g,
        alphabet: a.codes(),
        arith: a.carrier().arith(),
        pots: Potentials::new(g.vertex_count()),
        values: vec![0; g.edge_count()],
    };
    Ok(s.dfs(0).then(|| EdgeAssignment::new(a.carrier().clone(), s.values)))
}

/// Searches A-tensions of the materialized windows `0..=max_depth`. Windows
/// are subgraphs of the infinite graph, so their cycles are cycles of it and
/// a window without an A-tension proves that none exists.
pub fn check_infinite_tension(
    p: &PeriodicPresentation,
    a: &FlowAlphabet,
    max_depth: usize,
) -> Result<Verdict> {
    let mut transcript = Vec::new();
    let label = a.describe();
    let last = if p.is_finite() { 0 } else { max_depth };
    for n in 0..=last {
        let w = p.materialize(n)?;
        let g = &w.graph;
        let head = format!(
            "depth {n}: window has {} vertices, {} edges and {} independent cycles",
            g.vertex_count(),
            g.edge_count(),
            fundamental_cycles(g).len()
        );
        if find_tension(g, a)?.is_some() {
            transcript.push(format!("{head}; a tension with values in {label} exists"));
            continue;
        }
        transcript.push(format!(
            "{head}; exhaustive search finds no tension with values in {label}"
        ));
        transcript.push("these cycles are cycles of the infinite graph, so no tension exists".into());
        return Ok(Verdict::No(Box::new(ObstructionCertificate {
            kind: CertificateKind::Tension,
            depth: n,
            alphabet: a.to_file(),
            quotient: g.to_json(),
            cuts: Vec::new(),
            cycles: fundamental_cycles(g).iter().map(|c| signed_ids(g, c)).collect(),
            transcript,
            witness: None,
        })));
    }
    Ok(Verdict::YesUpTo(last))
}
