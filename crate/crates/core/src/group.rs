//! Finite abelian groups as direct sums of cyclic groups, and flow alphabets.
//!
//! Elements are enumerated in mixed-radix order with the first summand most
//! significant, so index 0 is always the zero element and `Z2xZ2` lists
//! `(0,0), (0,1), (1,0), (1,1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `Z_{m1} ⊕ ... ⊕ Z_{mr}` with a display label.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    moduli: Vec<u32>,
    label: String,
}

/// Residues, one per cyclic summand.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<u32>);

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

impl FiniteAbelianGroup {
    pub fn new(moduli: Vec<u32>) -> Result<Self> {
        let label = moduli
            .iter()
            .map(|m| format!("Z{m}"))
            .collect::<Vec<_>>()
            .join("x");
        Self::with_label(moduli, label)
    }

    pub fn with_label(moduli: Vec<u32>, label: impl Into<String>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidParameter(
                "a group needs at least one cyclic summand".into(),
            ));
        }
        if let Some(&m) = moduli.iter().find(|&&m| m < 2) {
            return Err(Error::BadModulus(m as u64));
        }
        let order: u128 = moduli.iter().map(|&m| m as u128).product();
        if order > u32::MAX as u128 {
            return Err(Error::SizeGuard {
                what: "group order",
                actual: usize::MAX,
                limit: u32::MAX as usize,
            });
        }
        Ok(FiniteAbelianGroup {
            moduli,
            label: label.into(),
        })
    }

    pub fn cyclic(k: u32) -> Result<Self> {
        Self::new(vec![k])
    }

    /// The `m`-th roots of unity, carried as the cyclic group of order `m`.
    pub fn roots_of_unity(m: u32) -> Result<Self> {
        Self::with_label(vec![m], format!("R{m}"))
    }

    /// `⊕^{r} Z2`.
    pub fn elementary_2(r: usize) -> Result<Self> {
        Self::new(vec![2; r])
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().map(|&m| m as u64).product()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.moduli.len()])
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.0.len() == self.moduli.len() && x.0.iter().zip(&self.moduli).all(|(c, m)| c < m)
    }

    pub fn element(&self, coords: Vec<u32>) -> Result<GroupElement> {
        let x = GroupElement(coords);
        if self.contains(&x) {
            Ok(x)
        } else {
            Err(Error::ForeignElement(self.label.clone()))
        }
    }

    fn check(&self, x: &GroupElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(self.label.clone(), format!("{x}")))
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.moduli)
                .map(|((x, y), m)| ((*x as u64 + *y as u64) % *m as u64) as u32)
                .collect(),
        ))
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(GroupElement(
            a.0.iter()
                .zip(&self.moduli)
                .map(|(x, m)| (m - x) % m)
                .collect(),
        ))
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.add(a, &self.neg(b)?)
    }

    pub fn sum<'a>(&self, xs: impl IntoIterator<Item = &'a GroupElement>) -> Result<GroupElement> {
        xs.into_iter()
            .try_fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    pub fn index_of(&self, x: &GroupElement) -> Result<u64> {
        self.check(x)?;
        Ok(x.0
            .iter()
            .zip(&self.moduli)
            .fold(0u64, |acc, (c, m)| acc * *m as u64 + *c as u64))
    }

    pub fn element_at(&self, mut idx: u64) -> GroupElement {
        let mut coords = vec![0; self.moduli.len()];
        for (slot, &m) in coords.iter_mut().zip(&self.moduli).rev() {
            *slot = (idx % m as u64) as u32;
            idx /= m as u64;
        }
        GroupElement(coords)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(|i| self.element_at(i))
    }

    /// Sorted prime-power orders of the cyclic factors; equal exactly for isomorphic groups.
    pub fn elementary_divisors(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for &m in &self.moduli {
            let mut m = m as u64;
            let mut p = 2;
            while p * p <= m {
                if m % p == 0 {
                    let mut q = 1;
                    while m % p == 0 {
                        m /= p;
                        q *= p;
                    }
                    out.push(q);
                }
                p += 1;
            }
            if m > 1 {
                out.push(m);
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_isomorphic(&self, other: &FiniteAbelianGroup) -> bool {
        self.elementary_divisors() == other.elementary_divisors()
    }
}

/// Equal orders; the hypothesis under which non-elusive flow existence agrees.
pub fn same_order(h1: &FiniteAbelianGroup, h2: &FiniteAbelianGroup) -> bool {
    h1.order() == h2.order()
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    /// Parses `Z4`, `Z2xZ2`, `Z2xZ3`, `R3`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadGroupSpec(s.to_string());
        let t = s.trim();
        if let Some(rest) = t.strip_prefix('R') {
            let m: u32 = rest.parse().map_err(|_| bad())?;
            return Self::roots_of_unity(m).map_err(|_| bad());
        }
        let moduli = t
            .split(['x', 'X'])
            .map(|part| part.trim().strip_prefix('Z').and_then(|m| m.parse::<u32>().ok()))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(bad)?;
        Self::new(moduli).map_err(|_| bad())
    }
}

impl Serialize for FiniteAbelianGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label)
    }
}

impl<'de> Deserialize<'de> for FiniteAbelianGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Where flow values live: a finite abelian group, or the integers
/// (only through the k-flow alphabet).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Carrier {
    Group(FiniteAbelianGroup),
    Integers,
}

impl Carrier {
    pub fn label(&self) -> &str {
        match self {
            Carrier::Group(h) => h.label(),
            Carrier::Integers => "Z",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        if s.trim() == "Z" {
            Ok(Carrier::Integers)
        } else {
            Ok(Carrier::Group(s.parse()?))
        }
    }

    pub fn group(&self) -> Option<&FiniteAbelianGroup> {
        match self {
            Carrier::Group(h) => Some(h),
            Carrier::Integers => None,
        }
    }

    /// Coordinates of a value: residues for group elements, `[n]` for integers.
    pub fn decode(&self, code: i64) -> Vec<i64> {
        match self {
            Carrier::Group(h) => h
                .element_at(code as u64)
                .0
                .into_iter()
                .map(i64::from)
                .collect(),
            Carrier::Integers => vec![code],
        }
    }

    pub fn encode(&self, coords: &[i64]) -> Result<i64> {
        match self {
            Carrier::Group(h) => {
                let c: Vec<u32> = coords
                    .iter()
                    .map(|&x| u32::try_from(x).map_err(|_| Error::ForeignElement(h.label.clone())))
                    .collect::<Result<_>>()?;
                Ok(h.index_of(&h.element(c)?)? as i64)
            }
            Carrier::Integers => match coords {
                [x] => Ok(*x),
                _ => Err(Error::InvalidParameter(
                    "integer values are single-element arrays".into(),
                )),
            },
        }
    }

    pub fn display_code(&self, code: i64) -> String {
        match self {
            Carrier::Group(h) => h.element_at(code as u64).to_string(),
            Carrier::Integers => code.to_string(),
        }
    }

    pub(crate) fn arith(&self) -> Arith {
        match self {
            Carrier::Group(h) => Arith::for_group(h),
            Carrier::Integers => Arith::Integer,
        }
    }
}

/// Arithmetic on value codes; the zero code is 0 for every carrier.
#[derive(Debug, Clone)]
pub(crate) enum Arith {
    Cyclic(i64),
    Table { order: usize, add: Vec<u32>, neg: Vec<u32> },
    Integer,
}

impl Arith {
    fn for_group(h: &FiniteAbelianGroup) -> Arith {
        if h.moduli.len() == 1 {
            return Arith::Cyclic(h.moduli[0] as i64);
        }
        let order = h.order() as usize;
        let elems: Vec<GroupElement> = h.elements().collect();
        let mut add = vec![0u32; order * order];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                add[i * order + j] = h.index_of(&h.add(a, b).expect("own elements")).expect("own") as u32;
            }
        }
        let neg = elems
            .iter()
            .map(|a| h.index_of(&h.neg(a).expect("own")).expect("own") as u32)
            .collect();
        Arith::Table { order, add, neg }
    }

    #[inline]
    pub(crate) fn add(&self, a: i64, b: i64) -> i64 {
        match self {
            Arith::Cyclic(m) => (a + b) % m,
            Arith::Table { order, add, .. } => add[a as usize * order + b as usize] as i64,
            Arith::Integer => a + b,
        }
    }

    #[inline]
    pub(crate) fn neg(&self, a: i64) -> i64 {
        match self {
            Arith::Cyclic(m) => (m - a) % m,
            Arith::Table { neg, .. } => neg[a as usize] as i64,
            Arith::Integer => -a,
        }
    }

    #[inline]
    pub(crate) fn sub(&self, a: i64, b: i64) -> i64 {
        self.add(a, self.neg(b))
    }
}

/// A finite, nonempty set of allowed edge values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowAlphabet {
    carrier: Carrier,
    codes: Vec<i64>,
    closed_under_negation: bool,
    nonelusive: bool,
}

impl FlowAlphabet {
    fn finish(carrier: Carrier, codes: Vec<i64>) -> Result<Self> {
        if codes.is_empty() {
            return Err(Error::InvalidParameter("alphabet must be nonempty".into()));
        }
        let arith = carrier.arith();
        let set: std::collections::HashSet<i64> = codes.iter().copied().collect();
        let closed_under_negation = codes.iter().all(|&c| set.contains(&arith.neg(c)));
        let nonelusive = match &carrier {
            Carrier::Group(h) => !set.contains(&0) && set.len() as u64 == h.order() - 1,
            Carrier::Integers => !set.contains(&0),
        };
        Ok(FlowAlphabet {
            carrier,
            codes,
            closed_under_negation,
            nonelusive,
        })
    }

    /// Every nonzero element of `h`.
    pub fn nonzero(h: &FiniteAbelianGroup) -> Self {
        Self::finish(Carrier::Group(h.clone()), (1..h.order() as i64).collect())
            .expect("groups have order >= 2")
    }

    /// Every element of `h`, zero included.
    pub fn full(h: &FiniteAbelianGroup) -> Self {
        Self::finish(Carrier::Group(h.clone()), (0..h.order() as i64).collect())
            .expect("nonempty")
    }

    /// The listed elements, deduplicated in first-occurrence order.
    pub fn from_elements(h: &FiniteAbelianGroup, elems: &[GroupElement]) -> Result<Self> {
        let mut codes = Vec::new();
        for x in elems {
            let c = h.index_of(x)? as i64;
            if !codes.contains(&c) {
                codes.push(c);
            }
        }
        Self::finish(Carrier::Group(h.clone()), codes)
    }

    /// `{-(k-1), ..., -1, 1, ..., k-1}` inside the integers.
    pub fn k_flow(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
        }
        let k = k as i64;
        let codes = (-(k - 1)..=-1).chain(1..k).collect();
        Self::finish(Carrier::Integers, codes)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn group(&self) -> Option<&FiniteAbelianGroup> {
        self.carrier.group()
    }

    pub fn codes(&self) -> &[i64] {
        &self.codes
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn contains_code(&self, c: i64) -> bool {
        self.codes.contains(&c)
    }

    /// True when the alphabet is exactly `H \ {0}` (or a zero-free integer alphabet).
    pub fn is_nonelusive(&self) -> bool {
        self.nonelusive
    }

    pub fn closed_under_negation(&self) -> bool {
        self.closed_under_negation
    }

    /// Group elements of the alphabet in order; empty for integer alphabets.
    pub fn elements(&self) -> Vec<GroupElement> {
        match &self.carrier {
            Carrier::Group(h) => self.codes.iter().map(|&c| h.element_at(c as u64)).collect(),
            Carrier::Integers => Vec::new(),
        }
    }

    pub fn describe(&self) -> String {
        let vals: Vec<String> = self
            .codes
            .iter()
            .map(|&c| self.carrier.display_code(c))
            .collect();
        format!("{}{{{}}}", self.carrier.label(), vals.join(","))
    }

    /// Serializable form `{"group": .., "values": [[..], ..]}`.
    pub fn to_file(&self) -> AlphabetFile {
        AlphabetFile {
            group: self.carrier.label().to_string(),
            values: self.codes.iter().map(|&c| self.carrier.decode(c)).collect(),
        }
    }

    pub fn from_file(f: &AlphabetFile) -> Result<Self> {
        let carrier = Carrier::parse(&f.group)?;
        let codes = f
            .values
            .iter()
            .map(|v| carrier.encode(v))
            .collect::<Result<Vec<_>>>()?;
        Self::finish(carrier, codes)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphabetFile {
    pub group: String,
    pub values: Vec<Vec<i64>>,
}

/// Exhaustive sanity check of the group axioms; returns a description of the first failure.
pub fn check_group_axioms(h: &FiniteAbelianGroup) -> std::result::Result<(), String> {
    let elems: Vec<GroupElement> = h.elements().collect();
    let zero = h.zero();
    let mut seen = BTreeMap::new();
    for a in &elems {
        if h.add(a, &zero).map_err(|e| e.to_string())? != *a {
            return Err(format!("{a} + 0 != {a}"));
        }
        if h.add(a, &h.neg(a).map_err(|e| e.to_string())?).map_err(|e| e.to_string())? != zero {
            return Err(format!("{a} + (-{a}) != 0"));
        }
        for b in &elems {
            let ab = h.add(a, b).map_err(|e| e.to_string())?;
            if ab != h.add(b, a).map_err(|e| e.to_string())? {
                return Err(format!("{a} + {b} not commutative"));
            }
            for c in &elems {
                let l = h.add(&ab, c).map_err(|e| e.to_string())?;
                let r = h
                    .add(a, &h.add(b, c).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                if l != r {
                    return Err(format!("({a}+{b})+{c} != {a}+({b}+{c})"));
                }
            }
        }
        seen.insert(h.index_of(a).map_err(|e| e.to_string())?, ());
    }
    if seen.len() as u64 != h.order() {
        return Err("element indices are not distinct".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FiniteAbelianGroup {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let z4 = g("Z4");
        assert_eq!(
            z4.add(&GroupElement(vec![3]), &GroupElement(vec![3])).unwrap(),
            GroupElement(vec![2])
        );
        let v = g("Z2xZ2");
        assert_eq!(
            v.add(&GroupElement(vec![1, 0]), &GroupElement(vec![0, 1])).unwrap(),
            GroupElement(vec![1, 1])
        );
        assert_eq!(g("Z3").neg(&GroupElement(vec![1])).unwrap(), GroupElement(vec![2]));
        assert_eq!(z4.sum(std::iter::empty()).unwrap(), z4.zero());
        assert!(matches!(
            z4.add(&GroupElement(vec![1, 0]), &GroupElement(vec![1])),
            Err(Error::GroupMismatch(..))
        ));
    }

    #[test]
    fn order_comparisons() {
        assert!(same_order(&g("Z4"), &g("Z2xZ2")));
        assert!(!same_order(&g("Z3"), &g("Z4")));
        assert!(same_order(&g("Z6"), &g("Z2xZ3")));
        assert!(g("Z6").is_isomorphic(&g("Z2xZ3")));
        assert!(!g("Z4").is_isomorphic(&g("Z2xZ2")));
        assert!(g("R3").is_isomorphic(&g("Z3")));
        assert_eq!(g("R3").label(), "R3");
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "Z1", "Zx", "Q4", "Z2xx", "R1"] {
            assert!(bad.parse::<FiniteAbelianGroup>().is_err(), "{bad}");
        }
    }

    #[test]
    fn alphabets() {
        let a = FlowAlphabet::nonzero(&g("Z2"));
        assert_eq!(a.elements(), vec![GroupElement(vec![1])]);
        let b = FlowAlphabet::nonzero(&g("Z2xZ2"));
        assert_eq!(
            b.elements(),
            vec![
                GroupElement(vec![0, 1]),
                GroupElement(vec![1, 0]),
                GroupElement(vec![1, 1])
            ]
        );
        assert!(b.is_nonelusive() && b.closed_under_negation());
        let k = FlowAlphabet::k_flow(3).unwrap();
        assert_eq!(k.codes(), &[-2, -1, 1, 2]);
        assert!(FlowAlphabet::k_flow(1).is_err());
        assert!(!FlowAlphabet::full(&g("Z3")).is_nonelusive());
        let partial = FlowAlphabet::from_elements(&g("Z4"), &[GroupElement(vec![1])]).unwrap();
        assert!(!partial.is_nonelusive());
        assert!(!partial.closed_under_negation());
    }

    #[test]
    fn axioms_hold_up_to_order_16() {
        for spec in ["Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "Z2xZ3", "Z7", "Z8", "Z2xZ4", "Z2xZ2xZ2", "Z9", "Z3xZ3", "Z10", "Z12", "Z2xZ6", "Z16", "Z4xZ4", "Z2xZ2xZ2xZ2", "R3"] {
            check_group_axioms(&g(spec)).unwrap();
        }
    }

    #[test]
    fn alphabet_file_round_trip() {
        let a = FlowAlphabet::nonzero(&g("Z2xZ3"));
        assert_eq!(FlowAlphabet::from_file(&a.to_file()).unwrap(), a);
        let k = FlowAlphabet::k_flow(4).unwrap();
        assert_eq!(FlowAlphabet::from_file(&k.to_file()).unwrap(), k);
    }
}
