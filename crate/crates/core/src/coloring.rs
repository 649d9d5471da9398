//! Semi-k-edge-colourings and their correspondence with flows over `⊕^{k-1} Z2`.
//!
//! A colouring is semi when in every cut the numbers of crossing edges of the
//! various colours all have the same parity. The colour-count parity vector
//! of a cut is the sum of the vectors of the vertices on one side, and the
//! all-equal vectors `{0, 1}` form a subspace, so on a finite graph checking
//! vertex cuts suffices. [`is_semi_coloring`] still walks every cut;
//! [`first_bad_vertex`] is the local test.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{find_flow, verify_flow, EdgeAssignment};
use crate::graph::{enumerate_cuts, Multigraph, OrientedCut};
use crate::group::{Carrier, FiniteAbelianGroup, FlowAlphabet, GroupElement};

/// Colours `1..=k`, one per edge in edge order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    pub k: u32,
    pub colors: Vec<u32>,
}

/// Colouring JSON: `{"k":3,"colors":{"e1":2,...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    pub k: u32,
    pub colors: BTreeMap<String, u32>,
}

impl EdgeColoring {
    pub fn new(g: &Multigraph, k: u32, colors: Vec<u32>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        if colors.len() != g.edge_count() {
            return Err(Error::InvalidParameter(format!(
                "{} colours for {} edges",
                colors.len(),
                g.edge_count()
            )));
        }
        if let Some(e) = colors.iter().position(|&c| c == 0 || c > k) {
            return Err(Error::BadEdge {
                edge: g.edge_id(e).to_string(),
                reason: format!("colour {} outside 1..={k}", colors[e]),
            });
        }
        Ok(EdgeColoring { k, colors })
    }

    pub fn to_file(&self, g: &Multigraph) -> ColoringFile {
        ColoringFile {
            k: self.k,
            colors: (0..g.edge_count())
                .map(|e| (g.edge_id(e).to_string(), self.colors[e]))
                .collect(),
        }
    }

    pub fn from_file(g: &Multigraph, f: &ColoringFile) -> Result<Self> {
        for id in f.colors.keys() {
            g.require_edge(id)?;
        }
        let colors = (0..g.edge_count())
            .map(|e| {
                f.colors
                    .get(g.edge_id(e))
                    .copied()
                    .ok_or_else(|| Error::PartialAssignment(g.edge_id(e).to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(g, f.k, colors)
    }

    /// Per-colour counts of the crossing edges of `cut`.
    pub fn counts(&self, cut: &OrientedCut) -> Vec<usize> {
        let mut counts = vec![0; self.k as usize];
        for d in cut.crossing() {
            counts[self.colors[d.edge] as usize - 1] += 1;
        }
        counts
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemiCheck {
    Valid,
    CutViolated { cut: OrientedCut, counts: Vec<usize> },
}

impl SemiCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, SemiCheck::Valid)
    }

    pub fn describe(&self, g: &Multigraph) -> String {
        match self {
            SemiCheck::Valid => "valid".into(),
            SemiCheck::CutViolated { cut, counts } => {
                format!("cut {} has colour counts {counts:?}", cut.describe(g))
            }
        }
    }
}

fn same_parity(counts: &[usize]) -> bool {
    counts.iter().all(|c| c % 2 == counts[0] % 2)
}

/// Checks the parity condition on every cut of a connected graph (subject to
/// the cut enumeration size guard).
pub fn is_semi_coloring(g: &Multigraph, c: &EdgeColoring) -> Result<SemiCheck> {
    check_length(g, c)?;
    for cut in enumerate_cuts(g)? {
        let counts = c.counts(&cut);
        if !same_parity(&counts) {
            return Ok(SemiCheck::CutViolated { cut, counts });
        }
    }
    Ok(SemiCheck::Valid)
}

fn check_length(g: &Multigraph, c: &EdgeColoring) -> Result<()> {
    if c.colors.len() != g.edge_count() {
        return Err(Error::InvalidParameter(format!(
            "{} colours for {} edges",
            c.colors.len(),
            g.edge_count()
        )));
    }
    Ok(())
}

/// First vertex whose cut violates the parity condition.
pub fn first_bad_vertex(g: &Multigraph, c: &EdgeColoring) -> Option<usize> {
    (0..g.vertex_count()).find(|&v| {
        let mut counts = vec![0usize; c.k as usize];
        for &e in g.incident(v) {
            if !g.edge(e).is_loop() {
                counts[c.colors[e] as usize - 1] += 1;
            }
        }
        !same_parity(&counts)
    })
}

/// Proper: loopless, and the colours at each vertex are distinct.
pub fn is_proper_coloring(g: &Multigraph, c: &EdgeColoring) -> bool {
    !g.has_loops()
        && (0..g.vertex_count()).all(|v| {
            let mut seen = vec![false; c.k as usize + 1];
            g.incident(v)
                .iter()
                .all(|&e| !std::mem::replace(&mut seen[c.colors[e] as usize], true))
        })
}

/// Lexicographically first semi-k-colouring (edges in input order, colours
/// ascending), checking each vertex once its last non-loop edge is coloured.
pub fn find_semi_coloring(g: &Multigraph, k: u32) -> Result<Option<EdgeColoring>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let m = g.edge_count();
    // the last non-loop edge index at each vertex closes it
    let mut closes: Vec<Vec<usize>> = vec![Vec::new(); m];
    for v in 0..g.vertex_count() {
        if let Some(&last) = g.incident(v).iter().filter(|&&e| !g.edge(e).is_loop()).max() {
            closes[last].push(v);
        }
    }
    let mut colors = vec![1u32; m];
    let mut parity = vec![0u64; g.vertex_count()];
    let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    if k > 64 {
        return Err(Error::SizeGuard {
            what: "number of colours",
            actual: k as usize,
            limit: 64,
        });
    }
    fn dfs(
        g: &Multigraph,
        k: u32,
        full: u64,
        closes: &[Vec<usize>],
        e: usize,
        colors: &mut [u32],
        parity: &mut [u64],
    ) -> bool {
        if e == g.edge_count() {
            return true;
        }
        let edge = g.edge(e).clone();
        if edge.is_loop() {
            colors[e] = 1;
            return dfs(g, k, full, closes, e + 1, colors, parity);
        }
        for c in 1..=k {
            let bit = 1u64 << (c - 1);
            parity[edge.u] ^= bit;
            parity[edge.v] ^= bit;
            colors[e] = c;
            let ok = closes[e].iter().all(|&v| parity[v] == 0 || parity[v] == full);
            if ok && dfs(g, k, full, closes, e + 1, colors, parity) {
                return true;
            }
            parity[edge.u] ^= bit;
            parity[edge.v] ^= bit;
        }
        false
    }
    Ok(dfs(g, k, full, &closes, 0, &mut colors, &mut parity).then(|| EdgeColoring { k, colors }))
}

/// `⊕^{k-1} Z2`, the group carrying semi-k-colourings.
pub fn coloring_group(k: u32) -> Result<FiniteAbelianGroup> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "colourings become flows for k >= 2, got {k}"
        )));
    }
    FiniteAbelianGroup::elementary_2(k as usize - 1)
}

/// Image of colour `i` in `⊕^{k-1} Z2`: `e_i` for `i < k`, the all-ones vector for `k`.
pub fn color_element(k: u32, i: u32) -> GroupElement {
    let r = k as usize - 1;
    if i == k {
        GroupElement(vec![1; r])
    } else {
        let mut x = vec![0; r];
        x[i as usize - 1] = 1;
        GroupElement(x)
    }
}

/// The alphabet `{e_1, ..., e_{k-1}, e_1 + ... + e_{k-1}}`.
pub fn semi_alphabet(k: u32) -> Result<FlowAlphabet> {
    let h = coloring_group(k)?;
    let elems: Vec<GroupElement> = (1..=k).map(|i| color_element(k, i)).collect();
    FlowAlphabet::from_elements(&h, &elems)
}

/// Sends colour `i` to [`color_element`]; the colouring must be semi.
pub fn coloring_to_flow(g: &Multigraph, c: &EdgeColoring) -> Result<EdgeAssignment> {
    check_length(g, c)?;
    let h = coloring_group(c.k)?;
    if let Some(v) = first_bad_vertex(g, c) {
        let cut = OrientedCut::vertex_cut(g, v)?;
        return Err(Error::Precondition(format!(
            "not a semi-{}-edge-colouring: cut {} has colour counts {:?}",
            c.k,
            cut.describe(g),
            c.counts(&cut)
        )));
    }
    let values = c
        .colors
        .iter()
        .map(|&i| Ok(h.index_of(&color_element(c.k, i))? as i64))
        .collect::<Result<Vec<_>>>()?;
    Ok(EdgeAssignment::new(Carrier::Group(h), values))
}

/// Inverse of [`coloring_to_flow`] on flows with values in [`semi_alphabet`].
/// For `k = 2` both colours map to the same element; colour 1 is returned.
pub fn flow_to_coloring(g: &Multigraph, f: &EdgeAssignment) -> Result<EdgeColoring> {
    let h = f
        .carrier()
        .group()
        .filter(|h| h.moduli().iter().all(|&m| m == 2))
        .ok_or_else(|| {
            Error::Precondition(format!(
                "expected a flow over a sum of copies of Z2, got {}",
                f.carrier().label()
            ))
        })?;
    let k = h.moduli().len() as u32 + 1;
    let a = semi_alphabet(k)?;
    let a = FlowAlphabet::from_elements(h, &a.elements())?;
    let check = verify_flow(g, f, &a, None)?;
    if !check.is_valid() {
        return Err(Error::Precondition(format!(
            "not a flow with values in {}: {}",
            a.describe(),
            check.describe(g, f.carrier())
        )));
    }
    let colors = f
        .values()
        .iter()
        .map(|&x| {
            let coords = h.element_at(x as u64).0;
            let ones = coords.iter().filter(|&&b| b == 1).count();
            if ones == 1 {
                coords.iter().position(|&b| b == 1).expect("one bit") as u32 + 1
            } else {
                k
            }
        })
        .collect();
    EdgeColoring::new(g, k, colors)
}

/// Decides semi-3-colourability by colouring search and the existence of a
/// non-elusive Z4-flow by flow search, independently.
pub fn semi3_iff_z4(g: &Multigraph) -> Result<(bool, bool)> {
    let semi = find_semi_coloring(g, 3)?.is_some();
    let z4 = find_flow(g, &FlowAlphabet::nonzero(&FiniteAbelianGroup::cyclic(4)?)).is_some();
    Ok((semi, z4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn proper_k4() -> (Multigraph, EdgeColoring) {
        let g = named::complete(4);
        // perfect matchings of K4 get colours 1, 2, 3
        let colors = g
            .edges()
            .iter()
            .map(|e| match (e.tail(), e.head()) {
                (0, 1) | (2, 3) => 1,
                (0, 2) | (1, 3) => 2,
                _ => 3,
            })
            .collect();
        let c = EdgeColoring::new(&g, 3, colors).unwrap();
        (g, c)
    }

    #[test]
    fn examples() {
        let c4 = named::cycle(4);
        let all1 = EdgeColoring::new(&c4, 2, vec![1; 4]).unwrap();
        assert!(is_semi_coloring(&c4, &all1).unwrap().is_valid());
        let (k4, c) = proper_k4();
        assert!(is_proper_coloring(&k4, &c));
        assert!(is_semi_coloring(&k4, &c).unwrap().is_valid());
        let p = named::path(3);
        for colors in [vec![1, 1], vec![1, 2], vec![2, 2]] {
            let c = EdgeColoring::new(&p, 2, colors).unwrap();
            assert!(!is_semi_coloring(&p, &c).unwrap().is_valid());
        }
    }

    #[test]
    fn flow_correspondence() {
        let c4 = named::cycle(4);
        let c = EdgeColoring::new(&c4, 3, vec![1; 4]).unwrap();
        let f = coloring_to_flow(&c4, &c).unwrap();
        assert!(f.values().iter().all(|&x| x == 2)); // e_1 = (1,0)
        assert_eq!(flow_to_coloring(&c4, &f).unwrap(), c);
        let (k4, c) = proper_k4();
        let f = coloring_to_flow(&k4, &c).unwrap();
        let h = FiniteAbelianGroup::elementary_2(2).unwrap();
        assert!(verify_flow(&k4, &f, &FlowAlphabet::nonzero(&h), None).unwrap().is_valid());
        assert_eq!(flow_to_coloring(&k4, &f).unwrap(), c);
    }

    #[test]
    fn non_semi_input_is_rejected_with_a_cut() {
        let p = named::path(2);
        let c = EdgeColoring::new(&p, 3, vec![1]).unwrap();
        assert!(matches!(coloring_to_flow(&p, &c), Err(Error::Precondition(_))));
    }

    #[test]
    fn semi3_examples() {
        assert_eq!(semi3_iff_z4(&named::complete(4)).unwrap(), (true, true));
        assert_eq!(semi3_iff_z4(&named::petersen()).unwrap(), (false, false));
        assert_eq!(semi3_iff_z4(&named::cycle(5)).unwrap(), (true, true));
    }

    #[test]
    fn file_round_trip() {
        let (k4, c) = proper_k4();
        let text = serde_json::to_string(&c.to_file(&k4)).unwrap();
        let back: ColoringFile = serde_json::from_str(&text).unwrap();
        assert_eq!(EdgeColoring::from_file(&k4, &back).unwrap(), c);
    }
}
