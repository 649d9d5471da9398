//! Symbolic unit-circle flows on graphs dominated by degree-3 vertices.
//!
//! The seed edge carries an indeterminate unit `z1`. At a degree-3 vertex the
//! three outgoing values are unit vectors summing to zero, hence `z1` times a
//! rotation of `{1, ω, ω²}`. Propagating from the seed through a connected
//! dominating set therefore keeps every value in `z1·μ6`, where `μ6` is the
//! sixth roots of unity. We store the exponent `j` of `ζ = e^{iπ/3}` per edge
//! on its canonical orientation; reversing an edge adds 3.
//!
//! With `ζ^j = (-1)^j ω^{2j}`, exponent `j` has class `2j mod 3` (which of
//! `z1, z2, z3` up to sign) and sign `(-1)^j`. A vertex outside the set has
//! zero sum in `Z[ω]` exactly when its signed class counts are all equal.

use super::EdgeAssignment;
use crate::error::{Error, Result};
use crate::graph::{edge_dominating_degree3_set, Multigraph};
use crate::group::{Carrier, FiniteAbelianGroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum S1Outcome {
    Classes(S1Classes),
    /// Every completion of the seed forces some edge into two classes.
    Conflict,
}

/// Per-edge exponents of `ζ` relative to the seed value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct S1Classes {
    exponents: Vec<u8>,
}

impl S1Classes {
    pub fn exponents(&self) -> &[u8] {
        &self.exponents
    }

    /// 0, 1, 2 for `z1`, `z2`, `z3`.
    pub fn class_of(&self, e: usize) -> u8 {
        (2 * self.exponents[e]) % 3
    }

    /// +1 or -1 on the canonical orientation.
    pub fn sign_of(&self, e: usize) -> i8 {
        if self.exponents[e] % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Edge indices of each class.
    pub fn classes(&self) -> [Vec<usize>; 3] {
        let mut out: [Vec<usize>; 3] = Default::default();
        for e in 0..self.exponents.len() {
            out[self.class_of(e) as usize].push(e);
        }
        out
    }

    /// The Z3-flow given by the sign of each edge (+1 ↦ 1, -1 ↦ 2).
    pub fn z3_flow(&self) -> EdgeAssignment {
        let z3 = FiniteAbelianGroup::cyclic(3).expect("valid modulus");
        EdgeAssignment::new(
            Carrier::Group(z3),
            (0..self.exponents.len())
                .map(|e| if self.sign_of(e) == 1 { 1 } else { 2 })
                .collect(),
        )
    }
}

/// Propagates a symbolic seed value through `u_set`.
pub fn s1_value_propagation(g: &Multigraph, u_set: &[usize], seed: usize) -> Result<S1Outcome> {
    if let Some(e) = g.edges().iter().find(|e| e.is_loop()) {
        return Err(Error::Precondition(format!("loop `{}`", e.id)));
    }
    if seed >= g.edge_count() {
        return Err(Error::UnknownEdge(format!("#{seed}")));
    }
    let mut in_u = vec![false; g.vertex_count()];
    for &v in u_set {
        if v >= g.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
        if g.degree(v) != 3 {
            return Err(Error::Precondition(format!(
                "vertex `{}` has degree {}, not 3",
                g.vertex_id(v),
                g.degree(v)
            )));
        }
        in_u[v] = true;
    }
    if !crate::graph::is_connected_dominating(g, &in_u) {
        return Err(Error::Precondition(
            "vertex set is not a connected edge-dominating set".into(),
        ));
    }
    let mut st = State {
        g,
        in_u,
        exp: vec![None; g.edge_count()],
    };
    if !st.assign(seed, 0) {
        return Ok(S1Outcome::Conflict);
    }
    Ok(match st.dfs() {
        Some(exponents) => S1Outcome::Classes(S1Classes { exponents }),
        None => S1Outcome::Conflict,
    })
}

/// As [`s1_value_propagation`], choosing the set with [`edge_dominating_degree3_set`].
pub fn s1_value_propagation_auto(g: &Multigraph, seed: usize) -> Result<S1Outcome> {
    let u = edge_dominating_degree3_set(g)?.ok_or_else(|| {
        Error::Precondition("no connected edge-dominating set of degree-3 vertices".into())
    })?;
    s1_value_propagation(g, &u, seed)
}

#[derive(Clone)]
struct State<'a> {
    g: &'a Multigraph,
    in_u: Vec<bool>,
    exp: Vec<Option<u8>>,
}

impl State<'_> {
    fn out_exp(&self, v: usize, e: usize) -> Option<u8> {
        let j = self.exp[e]?;
        Some(if self.g.edge(e).tail() == v { j } else { (j + 3) % 6 })
    }

    fn assign(&mut self, e: usize, j: u8) -> bool {
        let mut queue = vec![(e, j)];
        while let Some((e, j)) = queue.pop() {
            match self.exp[e] {
                Some(k) if k == j => continue,
                Some(_) => return false,
                None => self.exp[e] = Some(j),
            }
            let edge = self.g.edge(e);
            for v in [edge.u, edge.v] {
                match self.check(v) {
                    Check::Broken => return false,
                    Check::Force(f, x) => queue.push((f, x)),
                    Check::Fine => {}
                }
            }
        }
        true
    }

    fn check(&self, v: usize) -> Check {
        let inc = self.g.incident(v);
        let known: Vec<u8> = inc.iter().filter_map(|&e| self.out_exp(v, e)).collect();
        if self.in_u[v] {
            for (i, a) in known.iter().enumerate() {
                for b in &known[i + 1..] {
                    let d = (6 + a - b) % 6;
                    if d != 2 && d != 4 {
                        return Check::Broken;
                    }
                }
            }
            if known.len() == 2 {
                let open = *inc.iter().find(|&&e| self.exp[e].is_none()).expect("one open");
                let (a, b) = (known[0], known[1]);
                let out = if (a + 2) % 6 != b { (a + 2) % 6 } else { (a + 4) % 6 };
                let j = if self.g.edge(open).tail() == v { out } else { (out + 3) % 6 };
                return Check::Force(open, j);
            }
            Check::Fine
        } else if known.len() == inc.len() {
            let mut n = [0i64; 3];
            for j in known {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                n[((2 * j) % 3) as usize] += sign;
            }
            if n[0] == n[1] && n[1] == n[2] {
                Check::Fine
            } else {
                Check::Broken
            }
        } else {
            Check::Fine
        }
    }

    fn dfs(&mut self) -> Option<Vec<u8>> {
        let Some(e) = self.exp.iter().position(Option::is_none) else {
            return Some(self.exp.iter().map(|j| j.expect("complete")).collect());
        };
        for j in 0..6 {
            let mut next = self.clone();
            if next.assign(e, j) {
                if let Some(done) = next.dfs() {
                    return Some(done);
                }
            }
        }
        None
    }
}

enum Check {
    Fine,
    Broken,
    Force(usize, u8),
}
