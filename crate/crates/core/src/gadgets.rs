//! Expansions of a graph into a cubic (or k-regular) graph that contracts
//! back onto it, carrying a flow (or colouring) along.
//!
//! Every new vertex belongs to the class of the input vertex it was split
//! from. The returned cut family has one cut per class except the last, with
//! the class as side A, so contracting it merges each class into one vertex.
//! Edges inside a class become loops of the quotient; the input is recovered
//! up to those loops.
//!
//! New ids are namespaced by the vertex being replaced: `v:d0` (detached
//! pair), `v:c0` / `v:ce0` (claw centre and its edge), `w:a2`.. `w:b3` and
//! `w:a1b2`.. (K33 gadget on `w`), `v:g0.3` and `v:g0.1-3` (K_{k+1} gadget).

use crate::coloring::{first_bad_vertex, is_proper_coloring, EdgeColoring};
use crate::error::{Error, Result};
use crate::flow::{verify_flow, EdgeAssignment};
use crate::graph::{GraphBuilder, Multigraph, OrientedCut};
use crate::group::{Arith, FlowAlphabet};

/// Mutable graph under construction. `val` is read from `a` to `b`.
struct Draft {
    vid: Vec<String>,
    class: Vec<usize>,
    alive: Vec<bool>,
    eid: Vec<String>,
    a: Vec<usize>,
    b: Vec<usize>,
    val: Vec<i64>,
}

/// One end of an edge: `(edge, false)` is the `a` end.
type Half = (usize, bool);

impl Draft {
    fn from_graph(g: &Multigraph, val: impl Fn(usize) -> i64) -> Self {
        Draft {
            vid: g.vertex_ids().to_vec(),
            class: (0..g.vertex_count()).collect(),
            alive: vec![true; g.vertex_count()],
            eid: g.edges().iter().map(|e| e.id.clone()).collect(),
            a: g.edges().iter().map(|e| e.tail()).collect(),
            b: g.edges().iter().map(|e| e.head()).collect(),
            val: (0..g.edge_count()).map(val).collect(),
        }
    }

    fn add_vertex(&mut self, id: String, class: usize) -> usize {
        self.vid.push(id);
        self.class.push(class);
        self.alive.push(true);
        self.vid.len() - 1
    }

    fn add_edge(&mut self, id: String, a: usize, b: usize, val: i64) {
        self.eid.push(id);
        self.a.push(a);
        self.b.push(b);
        self.val.push(val);
    }

    /// Ends at `v`, ordered by edge index then end.
    fn halves(&self, v: usize) -> Vec<Half> {
        let mut out = Vec::new();
        for e in 0..self.eid.len() {
            if self.a[e] == v {
                out.push((e, false));
            }
            if self.b[e] == v {
                out.push((e, true));
            }
        }
        out
    }

    /// Value leaving through this end.
    fn out(&self, arith: &Arith, (e, at_b): Half) -> i64 {
        if at_b {
            arith.neg(self.val[e])
        } else {
            self.val[e]
        }
    }

    fn move_half(&mut self, (e, at_b): Half, to: usize) {
        if at_b {
            self.b[e] = to;
        } else {
            self.a[e] = to;
        }
    }

    /// Builds the graph (dead vertices dropped) and values on canonical orientations.
    fn finish(self, arith: &Arith, negate: bool) -> Result<(Multigraph, Vec<i64>, Vec<usize>)> {
        let mut b = GraphBuilder::new();
        let mut index = vec![usize::MAX; self.vid.len()];
        let mut class = Vec::new();
        for v in 0..self.vid.len() {
            if self.alive[v] {
                index[v] = b.add_vertex(self.vid[v].clone())?;
                class.push(self.class[v]);
            }
        }
        let mut vals = Vec::with_capacity(self.eid.len());
        for e in 0..self.eid.len() {
            let (u, v) = (index[self.a[e]], index[self.b[e]]);
            b.push_edge(self.eid[e].clone(), u, v)?;
            vals.push(if negate && u > v { arith.neg(self.val[e]) } else { self.val[e] });
        }
        Ok((b.build(), vals, class))
    }
}

fn class_cuts(h: &Multigraph, class: &[usize], classes: usize) -> Result<Vec<OrientedCut>> {
    (0..classes.saturating_sub(1))
        .map(|c| OrientedCut::from_side(h, class.iter().map(|&x| x == c).collect()))
        .collect()
}

#[derive(Debug, Clone)]
pub struct CubicExpansion {
    pub graph: Multigraph,
    pub flow: EdgeAssignment,
    /// Input vertex index for every vertex of `graph`.
    pub class_of: Vec<usize>,
    pub cuts: Vec<OrientedCut>,
}

/// Turns a non-elusive Z_k-flow (k odd, k >= 3) into a cubic graph with a
/// non-elusive Z_k-flow that contracts onto `g`.
///
/// Vertices of degree at least 4 are split, in vertex order: the first
/// zero-sum pair of ends moves to a new degree-2 vertex; without one, the
/// first two ends move to a claw centre joined back to the vertex. Then
/// every degree-2 vertex becomes K33 minus an edge, with values `{y, a, b}`
/// in a Latin square, `y` the value through the vertex and `a` the smallest
/// nonzero value leaving `b = -y-a` nonzero. An isolated vertex becomes a
/// whole K33 with `y = 1`.
pub fn expand_to_cubic(g: &Multigraph, f: &EdgeAssignment) -> Result<CubicExpansion> {
    let h = f
        .carrier()
        .group()
        .filter(|h| h.moduli().len() == 1)
        .ok_or_else(|| Error::Precondition(format!("expected a cyclic group, got {}", f.carrier().label())))?;
    let k = h.moduli()[0] as i64;
    if k % 2 == 0 || k < 3 {
        return Err(Error::Precondition(format!("k must be odd and at least 3, got {k}")));
    }
    let a = FlowAlphabet::nonzero(h);
    let check = verify_flow(g, f, &a, None)?;
    if !check.is_valid() {
        return Err(Error::Precondition(format!(
            "not a non-elusive Z{k}-flow: {}",
            check.describe(g, f.carrier())
        )));
    }
    let arith = f.carrier().arith();
    let mut d = Draft::from_graph(g, |e| f.value(e));
    let n = g.vertex_count();
    for v in 0..n {
        let (mut detached, mut claws) = (0, 0);
        loop {
            let hs = d.halves(v);
            if hs.len() < 4 {
                break;
            }
            let outs: Vec<i64> = hs.iter().map(|&x| d.out(&arith, x)).collect();
            let pair = (0..hs.len())
                .flat_map(|i| (i + 1..hs.len()).map(move |j| (i, j)))
                .find(|&(i, j)| arith.add(outs[i], outs[j]) == 0);
            let base = d.vid[v].clone();
            match pair {
                Some((i, j)) => {
                    let w = d.add_vertex(format!("{base}:d{detached}"), v);
                    detached += 1;
                    d.move_half(hs[i], w);
                    d.move_half(hs[j], w);
                }
                None => {
                    let s = arith.add(outs[0], outs[1]);
                    let w = d.add_vertex(format!("{base}:c{claws}"), v);
                    d.move_half(hs[0], w);
                    d.move_half(hs[1], w);
                    d.add_edge(format!("{base}:ce{claws}"), w, v, arith.neg(s));
                    claws += 1;
                }
            }
        }
    }
    let count = d.vid.len();
    for w in 0..count {
        let hs = d.halves(w);
        // an isolated vertex becomes a whole K33 carrying the constant 1
        let y = match hs.len() {
            3 => continue,
            2 => d.out(&arith, hs[0]),
            0 => 1,
            deg => {
                return Err(Error::Precondition(format!(
                    "vertex `{}` has degree {deg} after splitting",
                    d.vid[w]
                )))
            }
        };
        let (x, z) = (1..k)
            .map(|x| (x, arith.neg(arith.add(y, x))))
            .find(|&(_, z)| z != 0)
            .expect("k >= 3 leaves a choice");
        let s = [y, x, z];
        let base = d.vid[w].clone();
        let class = d.class[w];
        let mut side_a = vec![w];
        for i in 2..=3 {
            side_a.push(d.add_vertex(format!("{base}:a{i}"), class));
        }
        let side_b: Vec<usize> = (1..=3)
            .map(|i| d.add_vertex(format!("{base}:b{i}"), class))
            .collect();
        for i in 0..3 {
            for j in 0..3 {
                if (i, j) != (0, 0) || hs.is_empty() {
                    d.add_edge(
                        format!("{base}:a{}b{}", i + 1, j + 1),
                        side_a[i],
                        side_b[j],
                        s[(i + j) % 3],
                    );
                }
            }
        }
        // a1 sends y through the first end; b1 takes the second end
        if let Some(&h) = hs.get(1) {
            d.move_half(h, side_b[0]);
        }
    }
    let (graph, values, class_of) = d.finish(&arith, true)?;
    let flow = EdgeAssignment::new(f.carrier().clone(), values);
    let check = verify_flow(&graph, &flow, &a, None)?;
    if !check.is_valid() {
        return Err(Error::Precondition(format!(
            "internal: expanded flow fails: {}",
            check.describe(&graph, flow.carrier())
        )));
    }
    let cuts = class_cuts(&graph, &class_of, n)?;
    Ok(CubicExpansion {
        graph,
        flow,
        class_of,
        cuts,
    })
}

#[derive(Debug, Clone)]
pub struct RegularExpansion {
    pub graph: Multigraph,
    pub coloring: EdgeColoring,
    pub class_of: Vec<usize>,
    pub cuts: Vec<OrientedCut>,
}

/// Proper k-edge-colouring of K_{k+1} (k odd) by the circle method: vertex
/// k is the hub; round r pairs r with the hub and `r+i` with `r-i` mod k.
/// Returns `(u, v, colour)` triples.
pub fn round_robin(k: usize) -> Vec<(usize, usize, u32)> {
    let mut out = Vec::new();
    for r in 0..k {
        out.push((r, k, r as u32 + 1));
        for i in 1..=(k - 1) / 2 {
            let (u, v) = ((r + i) % k, (r + k - i) % k);
            out.push((u.min(v), u.max(v), r as u32 + 1));
        }
    }
    out
}

/// Turns a semi-k-edge-colouring (k odd) into a k-regular, properly
/// k-edge-coloured graph that contracts onto `g`.
///
/// At a vertex where every colour count is odd, the first end of each colour
/// stays and the vertex becomes regular. The remaining ends, paired per
/// colour in order, are each spliced through K_{k+1} minus the hub edge of
/// their colour. A vertex left without ends is dropped.
pub fn expand_to_regular(g: &Multigraph, c: &EdgeColoring) -> Result<RegularExpansion> {
    let k = c.k as usize;
    if k % 2 == 0 {
        return Err(Error::Precondition(format!("k must be odd, got {k}")));
    }
    EdgeColoring::new(g, c.k, c.colors.clone())?;
    if let Some(v) = first_bad_vertex(g, c) {
        return Err(Error::Precondition(format!(
            "not a semi-{k}-edge-colouring at vertex `{}`",
            g.vertex_id(v)
        )));
    }
    if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) == 0) {
        return Err(Error::Precondition(format!(
            "vertex `{}` has no edges and cannot become {k}-regular",
            g.vertex_id(v)
        )));
    }
    let kk = round_robin(k);
    let mut d = Draft::from_graph(g, |e| c.colors[e] as i64);
    let n = g.vertex_count();
    for v in 0..n {
        let hs = d.halves(v);
        let color = |h: Half| d.val[h.0] as u32;
        let mut by_color: Vec<Vec<Half>> = vec![Vec::new(); k + 1];
        for &h in &hs {
            by_color[color(h) as usize].push(h);
        }
        let odd = by_color[1].len() % 2 == 1;
        let mut pairs = Vec::new();
        for list in by_color.iter().skip(1) {
            let rest = if odd { &list[1..] } else { &list[..] };
            pairs.extend(rest.chunks(2).map(|p| (p[0], p[1])));
        }
        if !odd {
            d.alive[v] = false;
        }
        let base = d.vid[v].clone();
        for (j, (h1, h2)) in pairs.into_iter().enumerate() {
            let col = d.val[h1.0] as u32;
            let verts: Vec<usize> = (0..=k)
                .map(|t| d.add_vertex(format!("{base}:g{j}.{t}"), v))
                .collect();
            for &(x, y, cc) in &kk {
                if (x, y) != (col as usize - 1, k) {
                    d.add_edge(format!("{base}:g{j}.{x}-{y}"), verts[x], verts[y], cc as i64);
                }
            }
            d.move_half(h1, verts[col as usize - 1]);
            d.move_half(h2, verts[k]);
        }
    }
    let (graph, values, class_of) = d.finish(&Arith::Integer, false)?;
    let coloring = EdgeColoring::new(&graph, c.k, values.iter().map(|&x| x as u32).collect())?;
    let regular = (0..graph.vertex_count()).all(|v| graph.degree(v) == k);
    if !regular || !is_proper_coloring(&graph, &coloring) {
        return Err(Error::Precondition(
            "internal: expansion is not a proper k-regular colouring".into(),
        ));
    }
    let cuts = class_cuts(&graph, &class_of, n)?;
    Ok(RegularExpansion {
        graph,
        coloring,
        class_of,
        cuts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::contract;
    use crate::flow::find_flow;
    use crate::graph::named;
    use crate::group::FiniteAbelianGroup;
    use crate::iso::is_isomorphic;

    fn nz(k: u32) -> FlowAlphabet {
        FlowAlphabet::nonzero(&FiniteAbelianGroup::cyclic(k).unwrap())
    }

    fn contracts_back(g: &Multigraph, h: &Multigraph, cuts: &[OrientedCut]) -> bool {
        let (q, _) = contract(h, cuts).unwrap();
        is_isomorphic(&q.quotient.without_loops(), &g.without_loops())
    }

    #[test]
    fn triangle_becomes_cubic() {
        let t = named::triangle();
        let f = find_flow(&t, &nz(3)).unwrap();
        let x = expand_to_cubic(&t, &f).unwrap();
        assert!((0..x.graph.vertex_count()).all(|v| x.graph.degree(v) == 3));
        assert_eq!(x.graph.vertex_count(), 18);
        assert!(contracts_back(&t, &x.graph, &x.cuts));
    }

    #[test]
    fn wheel_hub_is_split() {
        let w = named::wheel(4);
        let f = find_flow(&w, &nz(5)).unwrap();
        let x = expand_to_cubic(&w, &f).unwrap();
        assert!((0..x.graph.vertex_count()).all(|v| x.graph.degree(v) == 3));
        assert!(contracts_back(&w, &x.graph, &x.cuts));
    }

    #[test]
    fn cubic_input_is_unchanged() {
        let g = named::complete_bipartite(3, 3);
        let f = find_flow(&g, &nz(3)).unwrap();
        let x = expand_to_cubic(&g, &f).unwrap();
        assert_eq!(x.graph, g);
        assert_eq!(x.flow, f);
    }

    #[test]
    fn isolated_vertex_becomes_k33() {
        let g = Multigraph::from_strs(&["v"], &[]).unwrap();
        let f = EdgeAssignment::new(nz(5).carrier().clone(), vec![]);
        let x = expand_to_cubic(&g, &f).unwrap();
        assert!(is_isomorphic(&x.graph, &named::complete_bipartite(3, 3)));
        assert!(contracts_back(&g, &x.graph, &x.cuts));
    }

    #[test]
    fn even_modulus_is_rejected() {
        let g = named::complete(4);
        let f = find_flow(&g, &nz(4)).unwrap();
        assert!(matches!(expand_to_cubic(&g, &f), Err(Error::Precondition(_))));
    }

    #[test]
    fn round_robin_is_proper() {
        for k in [1, 3, 5, 7] {
            let edges = round_robin(k);
            assert_eq!(edges.len(), (k + 1) * k / 2);
            let mut b = GraphBuilder::new();
            for i in 0..=k {
                b.add_vertex(format!("{i}")).unwrap();
            }
            for (i, &(u, v, _)) in edges.iter().enumerate() {
                b.push_edge(format!("e{i}"), u, v).unwrap();
            }
            let g = b.build();
            assert!(is_isomorphic(&g, &named::complete(k + 1)));
            let c = EdgeColoring::new(&g, k as u32, edges.iter().map(|e| e.2).collect()).unwrap();
            assert!(is_proper_coloring(&g, &c));
        }
    }

    #[test]
    fn regular_examples() {
        let k4 = named::complete(4);
        let c = crate::coloring::find_semi_coloring(&k4, 3).unwrap().unwrap();
        let x = expand_to_regular(&k4, &c).unwrap();
        if is_proper_coloring(&k4, &c) {
            assert_eq!(x.graph, k4);
        }
        let c4 = named::cycle(4);
        let c = EdgeColoring::new(&c4, 3, vec![1; 4]).unwrap();
        let x = expand_to_regular(&c4, &c).unwrap();
        assert_eq!(x.graph.vertex_count(), 16);
        assert!(contracts_back(&c4, &x.graph, &x.cuts));
        let star = named::star(3);
        let c = EdgeColoring::new(&star, 3, vec![1, 2, 3]).unwrap();
        assert!(matches!(expand_to_regular(&star, &c), Err(Error::Precondition(_))));
    }
}
