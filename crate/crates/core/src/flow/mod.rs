//! Edge assignments, flow verification and exhaustive flow counting.
//!
//! An assignment stores one value per edge on its canonical orientation
//! (tail = endpoint with the smaller vertex index). Reading an edge against
//! that orientation gives the negated value.

mod equivalence;
mod s1;
mod search;

pub use equivalence::{
    double_cover_to_z4, find_k_flow, find_k_flow_with, indicator_flow, k_flow_iff_zk, order_equivalence,
    z2_flow_iff_cycle_space, z4_to_double_cover,
};
pub use s1::{s1_value_propagation, s1_value_propagation_auto, S1Classes, S1Outcome};
pub use search::{find_flow, find_flow_with, SearchOptions};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DirectedEdge, Multigraph, OrientedCut};
use crate::group::{Carrier, FlowAlphabet};

/// Edge count above which [`count_flows`] refuses to run.
pub const COUNT_EDGE_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeAssignment {
    carrier: Carrier,
    values: Vec<i64>,
}

impl EdgeAssignment {
    /// Values are carrier codes in edge order (see [`Carrier::decode`]).
    pub fn new(carrier: Carrier, values: Vec<i64>) -> Self {
        EdgeAssignment { carrier, values }
    }

    pub fn constant(g: &Multigraph, carrier: Carrier, code: i64) -> Self {
        Self::new(carrier, vec![code; g.edge_count()])
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value on the canonical orientation of edge `e`.
    pub fn value(&self, e: usize) -> i64 {
        self.values[e]
    }

    pub fn set(&mut self, e: usize, code: i64) {
        self.values[e] = code;
    }

    /// Value read along `d`; negated when `d` runs against the canonical orientation.
    pub fn along(&self, d: DirectedEdge) -> i64 {
        let x = self.values[d.edge];
        if d.is_canonical() {
            x
        } else {
            self.carrier.arith().neg(x)
        }
    }

    pub fn to_file(&self, g: &Multigraph) -> FlowFile {
        FlowFile {
            group: self.carrier.label().to_string(),
            values: (0..g.edge_count())
                .map(|e| (g.edge_id(e).to_string(), self.carrier.decode(self.values[e])))
                .collect(),
        }
    }

    pub fn from_file(g: &Multigraph, f: &FlowFile) -> Result<Self> {
        let carrier = Carrier::parse(&f.group)?;
        for id in f.values.keys() {
            g.require_edge(id)?;
        }
        let values = (0..g.edge_count())
            .map(|e| {
                let id = g.edge_id(e);
                let v = f
                    .values
                    .get(id)
                    .ok_or_else(|| Error::PartialAssignment(id.to_string()))?;
                carrier.encode(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(carrier, values))
    }

    /// First edge whose code is not an element of the carrier group.
    pub fn first_foreign_code(&self) -> Option<usize> {
        let order = self.carrier.group()?.order();
        self.values.iter().position(|&x| x < 0 || x as u64 >= order)
    }

    fn check_against(&self, g: &Multigraph) -> Result<()> {
        if self.values.len() != g.edge_count() {
            let missing = g
                .edges()
                .get(self.values.len())
                .map(|e| e.id.clone())
                .unwrap_or_else(|| format!("#{}", self.values.len()));
            return Err(Error::PartialAssignment(missing));
        }
        Ok(())
    }
}

/// Flow JSON: `{"group":"Z4","values":{"e1":[3],...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowFile {
    pub group: String,
    pub values: BTreeMap<String, Vec<i64>>,
}

/// Outcome of [`verify_flow`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlowCheck {
    Valid,
    /// An edge value lies outside the alphabet.
    NotInAlphabet { edge: usize },
    /// The first cut whose crossing values do not sum to zero.
    CutViolated { cut: OrientedCut, sum: i64 },
}

impl FlowCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, FlowCheck::Valid)
    }

    pub fn describe(&self, g: &Multigraph, carrier: &Carrier) -> String {
        match self {
            FlowCheck::Valid => "valid".into(),
            FlowCheck::NotInAlphabet { edge } => {
                format!("edge `{}` has a value outside the alphabet", g.edge_id(*edge))
            }
            FlowCheck::CutViolated { cut, sum } => format!(
                "cut {} sums to {}",
                cut.describe(g),
                carrier.display_code(*sum)
            ),
        }
    }
}

/// Sum of `f` over the crossing edges of `cut`, each read from A to B.
pub fn cut_sum(f: &EdgeAssignment, cut: &OrientedCut) -> i64 {
    let arith = f.carrier.arith();
    cut.crossing()
        .iter()
        .fold(0, |acc, d| arith.add(acc, f.along(*d)))
}

/// Checks alphabet membership, then zero sums on `cuts` (or on every vertex
/// cut when `cuts` is `None`). Loops never enter a sum.
pub fn verify_flow(
    g: &Multigraph,
    f: &EdgeAssignment,
    a: &FlowAlphabet,
    cuts: Option<&[OrientedCut]>,
) -> Result<FlowCheck> {
    f.check_against(g)?;
    if f.carrier() != a.carrier() {
        return Err(Error::GroupMismatch(
            f.carrier().label().to_string(),
            a.carrier().label().to_string(),
        ));
    }
    if let Some(e) = (0..g.edge_count()).find(|&e| !a.contains_code(f.value(e))) {
        return Ok(FlowCheck::NotInAlphabet { edge: e });
    }
    match cuts {
        Some(cuts) => {
            for cut in cuts {
                let sum = cut_sum(f, cut);
                if sum != 0 {
                    return Ok(FlowCheck::CutViolated {
                        cut: cut.clone(),
                        sum,
                    });
                }
            }
        }
        None => {
            let sums = vertex_outflows(g, f);
            if g.vertex_count() > 1 {
                if let Some(v) = sums.iter().position(|&s| s != 0) {
                    return Ok(FlowCheck::CutViolated {
                        cut: OrientedCut::vertex_cut(g, v)?,
                        sum: sums[v],
                    });
                }
            }
        }
    }
    Ok(FlowCheck::Valid)
}

/// Net outflow at every vertex (loops ignored).
pub fn vertex_outflows(g: &Multigraph, f: &EdgeAssignment) -> Vec<i64> {
    let arith = f.carrier.arith();
    let mut out = vec![0i64; g.vertex_count()];
    for (e, edge) in g.edges().iter().enumerate() {
        if edge.is_loop() {
            continue;
        }
        let x = f.value(e);
        out[edge.tail()] = arith.add(out[edge.tail()], x);
        out[edge.head()] = arith.sub(out[edge.head()], x);
    }
    out
}

/// Counts A-flows by enumerating all of `A^E`; loops take every alphabet value.
pub fn count_flows(g: &Multigraph, a: &FlowAlphabet) -> Result<u64> {
    let m = g.edge_count();
    if m > COUNT_EDGE_LIMIT {
        return Err(Error::SizeGuard {
            what: "edge count for exhaustive counting",
            actual: m,
            limit: COUNT_EDGE_LIMIT,
        });
    }
    let codes = a.codes();
    let arith = a.carrier().arith();
    let mut digits = vec![0usize; m];
    let mut count = 0u64;
    loop {
        let mut sums = vec![0i64; g.vertex_count()];
        for (e, edge) in g.edges().iter().enumerate() {
            if edge.is_loop() {
                continue;
            }
            let x = codes[digits[e]];
            sums[edge.tail()] = arith.add(sums[edge.tail()], x);
            sums[edge.head()] = arith.sub(sums[edge.head()], x);
        }
        if sums.iter().all(|&s| s == 0) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == m {
                return Ok(count);
            }
            digits[i] += 1;
            if digits[i] < codes.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_cuts, named};
    use crate::group::FiniteAbelianGroup;

    fn nz(s: &str) -> FlowAlphabet {
        FlowAlphabet::nonzero(&s.parse::<FiniteAbelianGroup>().unwrap())
    }

    #[test]
    fn triangle_all_ones_over_z2() {
        let g = named::triangle();
        let a = nz("Z2");
        let f = EdgeAssignment::constant(&g, a.carrier().clone(), 1);
        assert!(verify_flow(&g, &f, &a, None).unwrap().is_valid());
    }

    #[test]
    fn bridge_is_violated() {
        let g = named::path(2);
        let a = nz("Z3");
        let f = EdgeAssignment::constant(&g, a.carrier().clone(), 1);
        match verify_flow(&g, &f, &a, None).unwrap() {
            FlowCheck::CutViolated { cut, .. } => assert_eq!(cut.side_a(), vec![0]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn k4_has_no_nonzero_z3_assignment() {
        let g = named::complete(4);
        let a = nz("Z3");
        for bits in 0..(1u32 << 6) {
            let vals = (0..6).map(|i| 1 + (bits >> i & 1) as i64).collect();
            let f = EdgeAssignment::new(a.carrier().clone(), vals);
            assert!(!verify_flow(&g, &f, &a, None).unwrap().is_valid());
        }
    }

    #[test]
    fn partial_assignment_is_an_error() {
        let g = named::triangle();
        let a = nz("Z2");
        let f = EdgeAssignment::new(a.carrier().clone(), vec![1, 1]);
        assert_eq!(
            verify_flow(&g, &f, &a, None).unwrap_err(),
            Error::PartialAssignment("e2".into())
        );
    }

    #[test]
    fn explicit_cuts_are_used() {
        let g = named::triangle();
        let a = nz("Z2");
        let f = EdgeAssignment::constant(&g, a.carrier().clone(), 1);
        let cuts: Vec<_> = enumerate_cuts(&g).unwrap().collect();
        assert!(verify_flow(&g, &f, &a, Some(&cuts)).unwrap().is_valid());
    }

    #[test]
    fn counts() {
        for n in 1..6 {
            assert_eq!(count_flows(&named::cycle(n), &nz("Z2")).unwrap(), 1);
        }
        assert_eq!(count_flows(&named::triangle(), &nz("Z3")).unwrap(), 2);
        assert_eq!(count_flows(&named::single_loop(), &nz("Z2")).unwrap(), 1);
        assert!(count_flows(&named::complete(6), &nz("Z2")).is_err());
    }

    #[test]
    fn flow_file_round_trip() {
        let g = named::triangle();
        let a = nz("Z2xZ2");
        let f = EdgeAssignment::new(a.carrier().clone(), vec![1, 2, 3]);
        let file = f.to_file(&g);
        assert_eq!(file.values["e2"], vec![1, 1]);
        assert_eq!(EdgeAssignment::from_file(&g, &file).unwrap(), f);
        let mut missing = file.clone();
        missing.values.remove("e0");
        assert_eq!(
            EdgeAssignment::from_file(&g, &missing).unwrap_err(),
            Error::PartialAssignment("e0".into())
        );
    }
}
