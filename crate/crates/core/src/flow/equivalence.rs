//! Integer k-flows and the classical translations between flow existence
//! statements: group order, cycle space indicators, double covers.

use super::{find_flow, find_flow_with, verify_flow, EdgeAssignment, FlowCheck, SearchOptions};
use crate::error::{Error, Result};
use crate::graph::{is_cycle_space_member, EdgeSubset, Multigraph};
use crate::group::{same_order, Carrier, FiniteAbelianGroup, FlowAlphabet};

/// First integer flow with values in `{±1, ..., ±(k-1)}`.
pub fn find_k_flow(g: &Multigraph, k: u32) -> Result<Option<EdgeAssignment>> {
    find_k_flow_with(g, k, SearchOptions::default())
}

pub fn find_k_flow_with(
    g: &Multigraph,
    k: u32,
    opts: SearchOptions,
) -> Result<Option<EdgeAssignment>> {
    let a = FlowAlphabet::k_flow(k)?;
    // every partial vertex sum is bounded by (k-1) * |E|
    let bound = (k as i128 - 1) * g.edge_count() as i128;
    if bound > (i64::MAX / 4) as i128 {
        return Err(Error::Overflow(format!(
            "k = {k} on {} edges",
            g.edge_count()
        )));
    }
    Ok(find_flow_with(g, &a, opts))
}

/// `(k-flow exists, non-elusive Z_k-flow exists)`.
pub fn k_flow_iff_zk(g: &Multigraph, k: u32) -> Result<(bool, bool)> {
    let integral = find_k_flow(g, k)?.is_some();
    let zk = FiniteAbelianGroup::cyclic(k)?;
    let modular = find_flow(g, &FlowAlphabet::nonzero(&zk)).is_some();
    Ok((integral, modular))
}

/// Non-elusive flow existence over two groups of equal order.
pub fn order_equivalence(
    g: &Multigraph,
    h1: &FiniteAbelianGroup,
    h2: &FiniteAbelianGroup,
) -> Result<(bool, bool)> {
    if !same_order(h1, h2) {
        return Err(Error::OrderMismatch(
            h1.label().to_string(),
            h2.label().to_string(),
        ));
    }
    Ok((
        find_flow(g, &FlowAlphabet::nonzero(h1)).is_some(),
        find_flow(g, &FlowAlphabet::nonzero(h2)).is_some(),
    ))
}

fn z2() -> FiniteAbelianGroup {
    FiniteAbelianGroup::cyclic(2).expect("valid modulus")
}

fn klein() -> FiniteAbelianGroup {
    FiniteAbelianGroup::new(vec![2, 2]).expect("valid moduli")
}

/// The indicator `δ_F` over Z2: 1 on edges of `f`, 0 elsewhere.
pub fn indicator_flow(g: &Multigraph, f: &EdgeSubset) -> EdgeAssignment {
    let values = (0..g.edge_count())
        .map(|e| i64::from(f.contains(e)))
        .collect();
    EdgeAssignment::new(Carrier::Group(z2()), values)
}

/// `(δ_F is a Z2-flow, F is in the cycle space)`.
pub fn z2_flow_iff_cycle_space(g: &Multigraph, f: &EdgeSubset) -> Result<(bool, bool)> {
    let delta = indicator_flow(g, f);
    let is_flow = verify_flow(g, &delta, &FlowAlphabet::full(&z2()), None)?.is_valid();
    Ok((is_flow, is_cycle_space_member(g, f)))
}

/// Supports of the two coordinate projections of a non-elusive Z2⊕Z2-flow.
pub fn z4_to_double_cover(g: &Multigraph, f: &EdgeAssignment) -> Result<(EdgeSubset, EdgeSubset)> {
    let a = FlowAlphabet::nonzero(&klein());
    match verify_flow(g, f, &a, None)? {
        FlowCheck::Valid => {}
        FlowCheck::NotInAlphabet { edge } => {
            return Err(Error::BadEdge {
                edge: g.edge_id(edge).to_string(),
                reason: "value is zero or outside Z2xZ2".into(),
            })
        }
        FlowCheck::CutViolated { cut, .. } => {
            return Err(Error::NotACut(format!(
                "flow condition fails on cut {}",
                cut.describe(g)
            )))
        }
    }
    // code of (x, y) is 2x + y
    let e1 = EdgeSubset::from_mask((0..g.edge_count()).map(|e| f.value(e) >> 1 & 1 == 1).collect());
    let e2 = EdgeSubset::from_mask((0..g.edge_count()).map(|e| f.value(e) & 1 == 1).collect());
    Ok((e1, e2))
}

/// `f(e) = (δ_{E1}(e), δ_{E2}(e))` for two cycle-space members covering `E`.
pub fn double_cover_to_z4(g: &Multigraph, e1: &EdgeSubset, e2: &EdgeSubset) -> Result<EdgeAssignment> {
    for s in [e1, e2] {
        if s.host_edge_count() != g.edge_count() {
            return Err(Error::InvalidParameter(
                "edge subset belongs to another graph".into(),
            ));
        }
        if let Some(v) = s.degrees(g).iter().position(|d| d % 2 == 1) {
            return Err(Error::BadVertex {
                vertex: g.vertex_id(v).to_string(),
                reason: "odd degree in a cover subset, so it is not in the cycle space".into(),
            });
        }
    }
    if let Some(e) = (0..g.edge_count()).find(|&e| !e1.contains(e) && !e2.contains(e)) {
        return Err(Error::BadEdge {
            edge: g.edge_id(e).to_string(),
            reason: "covered by neither subset".into(),
        });
    }
    let values = (0..g.edge_count())
        .map(|e| 2 * i64::from(e1.contains(e)) + i64::from(e2.contains(e)))
        .collect();
    Ok(EdgeAssignment::new(Carrier::Group(klein()), values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn g(s: &str) -> FiniteAbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn k_flow_examples() {
        let tri = named::triangle();
        let f = find_k_flow(&tri, 2).unwrap().unwrap();
        assert!(f.values().iter().all(|v| v.abs() == 1));
        assert!(find_k_flow(&named::complete(4), 4).unwrap().is_some());
        assert!(find_k_flow(&named::complete(4), 3).unwrap().is_none());
        for k in 2..6 {
            assert!(find_k_flow(&named::path(3), k).unwrap().is_none());
        }
        assert_eq!(k_flow_iff_zk(&named::complete(4), 3).unwrap(), (false, false));
    }

    #[test]
    fn order_examples() {
        assert_eq!(order_equivalence(&named::complete(4), &g("Z4"), &g("Z2xZ2")).unwrap(), (true, true));
        assert_eq!(order_equivalence(&named::petersen(), &g("Z4"), &g("Z2xZ2")).unwrap(), (false, false));
        assert_eq!(order_equivalence(&named::triangle(), &g("Z4"), &g("Z2xZ2")).unwrap(), (true, true));
        assert!(matches!(
            order_equivalence(&named::triangle(), &g("Z3"), &g("Z4")),
            Err(Error::OrderMismatch(..))
        ));
    }

    #[test]
    fn indicator_examples() {
        let tri = named::triangle();
        assert_eq!(z2_flow_iff_cycle_space(&tri, &EdgeSubset::full(&tri)).unwrap(), (true, true));
        let p = named::path(3);
        assert_eq!(z2_flow_iff_cycle_space(&p, &EdgeSubset::from_indices(&p, [1])).unwrap(), (false, false));
    }

    #[test]
    fn double_cover_round_trip_on_c4() {
        let c4 = named::cycle(4);
        let all = EdgeSubset::full(&c4);
        let f = double_cover_to_z4(&c4, &all, &all).unwrap();
        assert!(f.values().iter().all(|&v| v == 3));
        let (a, b) = z4_to_double_cover(&c4, &f).unwrap();
        assert!(a.is_full() && b.is_full());
    }

    #[test]
    fn double_cover_errors_name_the_culprit() {
        let p = named::path(3);
        let s = EdgeSubset::from_indices(&p, [0]);
        assert!(matches!(
            double_cover_to_z4(&p, &s, &s),
            Err(Error::BadVertex { .. })
        ));
        let c4 = named::cycle(4);
        let none = EdgeSubset::empty(&c4);
        assert_eq!(
            double_cover_to_z4(&c4, &none, &none).unwrap_err(),
            Error::BadEdge { edge: "e0".into(), reason: "covered by neither subset".into() }
        );
    }
}
