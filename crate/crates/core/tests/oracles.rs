//! Brute-force oracles, independent of the library's search code, and the
//! values they produced, frozen.

use std::collections::BTreeSet;

use nzflow::corpus::{connected_multigraphs, connected_multigraphs_by_size};
use nzflow::coloring::find_semi_coloring;
use nzflow::eulerian::find_spanning_eulerian;
use nzflow::fixtures;
use nzflow::flow::{count_flows, find_flow, find_k_flow};
use nzflow::graph::{named, Multigraph};
use nzflow::group::{FiniteAbelianGroup, FlowAlphabet};
use nzflow::tension::{find_tension, tension_from_potential, verify_tension};

/// Connected multigraphs (loops allowed, no isolated vertices unless single)
/// with exactly `m` edges, counted by canonicalising over all vertex
/// permutations.
fn brute_force_classes(m: usize) -> usize {
    let mut seen = BTreeSet::new();
    for n in 1..=m + 1 {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
        let perms = permutations(n);
        let mut pick = vec![0usize; m];
        loop {
            let edges: Vec<(usize, usize)> = pick.iter().map(|&i| slots[i]).collect();
            if connected_on(n, &edges) {
                let canon = perms
                    .iter()
                    .map(|p| {
                        let mut e: Vec<(usize, usize)> = edges
                            .iter()
                            .map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                            .collect();
                        e.sort();
                        e
                    })
                    .min()
                    .unwrap_or_default();
                seen.insert((n, canon));
            }
            // next non-decreasing index sequence
            let Some(i) = (0..m).rev().find(|&i| pick[i] + 1 < slots.len()) else { break };
            let next = pick[i] + 1;
            pick[i..].iter_mut().for_each(|x| *x = next);
        }
    }
    seen.len()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn connected_on(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &(u, v) in edges {
            for (a, b) in [(u, v), (v, u)] {
                if a == x && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

#[test]
fn corpus_matches_brute_force_for_small_sizes() {
    let by_size = connected_multigraphs_by_size(5);
    for (m, level) in by_size.iter().enumerate() {
        assert_eq!(level.len(), brute_force_classes(m), "m = {m}");
    }
}

#[test]
fn corpus_level_counts_are_frozen() {
    let counts: Vec<usize> = connected_multigraphs_by_size(8).iter().map(Vec::len).collect();
    assert_eq!(counts, [1, 2, 4, 11, 30, 95, 328, 1211, 4779]);
}

/// Number of H-flows nonzero on every non-loop edge (loops take every
/// nonzero value), counted over the cycle space: H-flows are exactly the
/// combinations of fundamental cycles of a spanning tree.
fn nowhere_zero_by_cycle_space(g: &Multigraph, h: &FiniteAbelianGroup) -> u64 {
    let n = g.vertex_count();
    let q = h.order() as usize;
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut in_tree = vec![false; g.edge_count()];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (e, edge) in g.edges().iter().enumerate() {
            let y = if edge.u == x { edge.v } else if edge.v == x { edge.u } else { continue };
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some((x, e));
                in_tree[e] = true;
                queue.push_back(y);
            }
        }
    }
    // tree edges from x up to the root, with +1 where the walk follows the
    // canonical orientation
    let up = |mut x: usize| {
        let mut path = Vec::new();
        while let Some((p, e)) = parent[x] {
            path.push((e, if g.edge(e).tail() == x { 1i64 } else { -1 }));
            x = p;
        }
        path
    };
    // chord tail -> head, then back from head to tail through the tree
    let chords: Vec<Vec<(usize, i64)>> = (0..g.edge_count())
        .filter(|&e| !in_tree[e])
        .map(|e| {
            let mut coef = vec![0i64; g.edge_count()];
            coef[e] = 1;
            for (te, s) in up(g.edge(e).head()) {
                coef[te] += s;
            }
            for (te, s) in up(g.edge(e).tail()) {
                coef[te] -= s;
            }
            coef.into_iter().enumerate().filter(|&(_, c)| c != 0).collect()
        })
        .collect();
    let elems: Vec<_> = h.elements().collect();
    let mut digits = vec![0usize; chords.len()];
    let mut count = 0;
    loop {
        let mut val = vec![h.zero(); g.edge_count()];
        for (c, &d) in chords.iter().zip(&digits) {
            for &(e, k) in c {
                let mut x = elems[d].clone();
                if k < 0 {
                    x = h.neg(&x).unwrap();
                }
                val[e] = h.add(&val[e], &x).unwrap();
            }
        }
        if val.iter().all(|x| *x != h.zero()) {
            count += 1;
        }
        let Some(i) = digits.iter().position(|&d| d + 1 < q) else { break };
        digits[i] += 1;
        digits[..i].iter_mut().for_each(|d| *d = 0);
    }
    count
}

fn cyclic(k: u32) -> FiniteAbelianGroup {
    FiniteAbelianGroup::cyclic(k).unwrap()
}

#[test]
fn flow_counts_agree_with_exhaustive_counting() {
    let cases = [
        (named::triangle(), 3),
        (named::complete(4), 3),
        (named::complete(4), 4),
        (named::complete(4), 5),
        (named::theta(3), 3),
        (named::wheel(4), 4),
        (named::cycle(5), 2),
    ];
    for (g, k) in cases {
        let h = cyclic(k);
        let exhaustive = count_flows(&g, &FlowAlphabet::nonzero(&h)).unwrap();
        assert_eq!(nowhere_zero_by_cycle_space(&g, &h), exhaustive, "{k} on {g:?}");
    }
}

#[test]
fn frozen_flow_counts() {
    assert_eq!(count_flows(&named::triangle(), &FlowAlphabet::nonzero(&cyclic(3))).unwrap(), 2);
    assert_eq!(count_flows(&named::complete(4), &FlowAlphabet::nonzero(&cyclic(4))).unwrap(), 6);
    assert_eq!(count_flows(&named::complete(4), &FlowAlphabet::nonzero(&cyclic(3))).unwrap(), 0);
    let p = fixtures::petersen();
    let counts: Vec<u64> = [3, 4, 5].map(|k| nowhere_zero_by_cycle_space(&p, &cyclic(k))).to_vec();
    assert_eq!(counts, [0, 0, 240]);
    let klein = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
    assert_eq!(nowhere_zero_by_cycle_space(&p, &klein), 0);
}

#[test]
fn search_agrees_with_cycle_space_oracle_on_corpus() {
    for g in connected_multigraphs(6) {
        for h in [cyclic(2), cyclic(3), cyclic(4), FiniteAbelianGroup::new(vec![2, 2]).unwrap()] {
            let found = find_flow(&g, &FlowAlphabet::nonzero(&h)).is_some();
            assert_eq!(found, nowhere_zero_by_cycle_space(&g, &h) > 0, "{} on {g:?}", h.label());
        }
    }
}

/// Integer k-flows by plain enumeration of `{±1..±(k-1)}^E`.
fn k_flow_exists(g: &Multigraph, k: i64) -> bool {
    let vals: Vec<i64> = (1..k).flat_map(|x| [x, -x]).collect();
    let m = g.edge_count();
    let mut d = vec![0usize; m];
    loop {
        let mut s = vec![0i64; g.vertex_count()];
        for (e, edge) in g.edges().iter().enumerate() {
            s[edge.u] += vals[d[e]];
            s[edge.v] -= vals[d[e]];
        }
        if s.iter().all(|&x| x == 0) {
            return true;
        }
        let Some(i) = d.iter().position(|&x| x + 1 < vals.len()) else { return false };
        d[i] += 1;
        d[..i].iter_mut().for_each(|x| *x = 0);
    }
}

#[test]
fn k_flow_search_agrees_with_enumeration() {
    for g in connected_multigraphs(5) {
        for k in 2..=4 {
            assert_eq!(find_k_flow(&g, k).unwrap().is_some(), k_flow_exists(&g, k as i64), "k={k} {g:?}");
        }
    }
}

/// Proper 3-edge-colouring by backtracking on edges.
fn three_edge_colourable(g: &Multigraph) -> bool {
    fn go(g: &Multigraph, e: usize, col: &mut Vec<u8>) -> bool {
        if e == g.edge_count() {
            return true;
        }
        let edge = g.edge(e);
        for c in 1..=3 {
            let clash = (0..e).any(|f| {
                col[f] == c && {
                    let o = g.edge(f);
                    [o.u, o.v].contains(&edge.u) || [o.u, o.v].contains(&edge.v)
                }
            });
            if !clash && !edge.is_loop() {
                col[e] = c;
                if go(g, e + 1, col) {
                    return true;
                }
            }
        }
        col[e] = 0;
        false
    }
    go(g, 0, &mut vec![0; g.edge_count()])
}

#[test]
fn petersen_and_k4_colourings() {
    let p = fixtures::petersen();
    assert!(!three_edge_colourable(&p));
    assert!(find_semi_coloring(&p, 3).unwrap().is_none());
    let k4 = fixtures::k4();
    assert!(three_edge_colourable(&k4));
    assert!(find_semi_coloring(&k4, 3).unwrap().is_some());
}

/// Lexicographically largest spanning connected even edge set, by enumeration.
fn largest_spanning_eulerian(g: &Multigraph) -> Option<Vec<bool>> {
    let m = g.edge_count();
    let n = g.vertex_count();
    let mut best: Option<Vec<bool>> = None;
    for bits in 0u64..1 << m {
        let take: Vec<bool> = (0..m).map(|e| bits >> e & 1 == 1).collect();
        let mut deg = vec![0usize; n];
        let mut kept = Vec::new();
        for (e, edge) in g.edges().iter().enumerate() {
            if take[e] {
                deg[edge.u] += 1;
                deg[edge.v] += 1;
                kept.push((edge.u, edge.v));
            }
        }
        let ok = deg.iter().all(|d| d % 2 == 0)
            && (n <= 1 || (deg.iter().all(|&d| d > 0) && connected_on(n, &kept)));
        if ok && best.as_ref().map_or(true, |b| take > *b) {
            best = Some(take);
        }
    }
    best
}

#[test]
fn spanning_eulerian_search_agrees_with_enumeration() {
    for g in connected_multigraphs(7) {
        let found = find_spanning_eulerian(&g)
            .unwrap()
            .map(|c| (0..g.edge_count()).map(|e| c.contains(e)).collect::<Vec<_>>());
        assert_eq!(found, largest_spanning_eulerian(&g), "{g:?}");
    }
}

#[test]
fn k4_spanning_eulerian_is_a_four_cycle() {
    let k4 = named::complete(4);
    let c = find_spanning_eulerian(&k4).unwrap().unwrap();
    assert_eq!(c.len(), 4);
    assert!(c.degrees(&k4).iter().all(|&d| d == 2));
}

#[test]
fn triangle_potential_tension() {
    let t = named::triangle();
    let h = cyclic(3);
    let p: Vec<_> = (0..3).map(|i| h.element(vec![i]).unwrap()).collect();
    let f = tension_from_potential(&t, &h, &p).unwrap();
    // oracle: value on canonical u -> v is p(v) - p(u) mod 3
    let expect: Vec<i64> = t
        .edges()
        .iter()
        .map(|e| (e.head() as i64 - e.tail() as i64).rem_euclid(3))
        .collect();
    assert_eq!(f.values(), &expect[..]);
    assert!(verify_tension(&t, &f).unwrap().is_valid());
}

#[test]
fn nowhere_zero_tension_is_a_proper_colouring() {
    // a nowhere-zero Z_k-tension exists iff the graph is properly k-vertex-colourable
    for g in connected_multigraphs(5) {
        for k in 2..=4 {
            let a = FlowAlphabet::nonzero(&cyclic(k));
            let found = find_tension(&g, &a).unwrap().is_some();
            let n = g.vertex_count();
            let colourable = (0..(k as usize).pow(n as u32)).any(|mut code| {
                let col: Vec<usize> = (0..n)
                    .map(|_| {
                        let c = code % k as usize;
                        code /= k as usize;
                        c
                    })
                    .collect();
                g.edges().iter().all(|e| col[e.u] != col[e.v])
            });
            assert_eq!(found, colourable, "k={k} {g:?}");
        }
    }
}

#[test]
fn fixture_windows_have_the_drawn_sizes() {
    // (cell vertices, cell edges, glue edges)
    let shapes = [
        (fixtures::ladder_fig1_1(), 6, 6, 3),
        (fixtures::petersen_chain(), 10, 12, 3),
        (fixtures::double_ray(), 1, 0, 1),
    ];
    for (p, cv, ce, glue) in shapes {
        for n in 0..5 {
            let w = p.materialize(n).unwrap();
            let cells = n + 1;
            assert_eq!(w.graph.vertex_count(), cells * cv);
            assert_eq!(w.graph.edge_count(), cells * ce + n * glue);
            assert_eq!(w.ports.len(), 2 * glue);
        }
    }
    let ray = fixtures::double_ray().materialize(3).unwrap();
    assert!(nzflow::iso::is_isomorphic(&ray.graph, &named::path(4)));
}
