use std::fmt;

use serde::{Deserialize, Serialize};

use super::perm::{Perm, PermError};
use crate::ramcore::{Partition, RamData};

/// Disjoint-set forest over `0..n` with path halving.
pub(crate) struct UnionFind {
    parent: Vec<u32>,
    components: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect(), components: n }
    }

    pub(crate) fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    pub(crate) fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
            self.components -= 1;
        }
    }

    pub(crate) fn components(&self) -> usize {
        self.components
    }
}

pub(crate) fn is_transitive<'a>(n: usize, perms: impl IntoIterator<Item = &'a Perm>) -> bool {
    let mut uf = UnionFind::new(n);
    for p in perms {
        for (x, &y) in p.images().iter().enumerate() {
            uf.union(x as u32, y);
        }
    }
    uf.components() <= 1
}

/// Tuple `σ_1, …, σ_r` of permutations of a common degree, with the two
/// structural conditions evaluated at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Perm>", into = "Vec<Perm>")]
pub struct Constellation {
    degree: usize,
    perms: Vec<Perm>,
    product_is_identity: bool,
    transitive: bool,
}

impl TryFrom<Vec<Perm>> for Constellation {
    type Error = PermError;
    fn try_from(v: Vec<Perm>) -> Result<Self, Self::Error> {
        Constellation::new(v)
    }
}

impl From<Constellation> for Vec<Perm> {
    fn from(c: Constellation) -> Self {
        c.perms
    }
}

impl Constellation {
    pub fn new(perms: Vec<Perm>) -> Result<Self, PermError> {
        let degree = perms.first().map_or(0, Perm::degree);
        if let Some(p) = perms.iter().find(|p| p.degree() != degree) {
            return Err(PermError::DegreeMismatch(degree, p.degree()));
        }
        let product = perms.iter().fold(Perm::identity(degree), |acc, p| acc.compose(p));
        let transitive = is_transitive(degree, &perms);
        Ok(Constellation { degree, perms, product_is_identity: product.is_identity(), transitive })
    }

    /// Parses `(0 1)(2 3 4) | (0 2)(1 3 4) | …`.
    pub fn parse(n: usize, text: &str) -> Result<Self, PermError> {
        let perms = text.split('|').map(|s| Perm::parse(n, s)).collect::<Result<Vec<_>, _>>()?;
        Constellation::new(perms)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    pub fn product_is_identity(&self) -> bool {
        self.product_is_identity
    }

    pub fn is_transitive(&self) -> bool {
        self.transitive
    }

    pub fn cycle_types(&self) -> Vec<Partition> {
        self.perms.iter().map(Perm::cycle_type).collect()
    }

    /// Simultaneous relabeling `σ_i ↦ g σ_i g⁻¹`.
    pub fn conjugate_by(&self, g: &Perm) -> Constellation {
        Constellation {
            degree: self.degree,
            perms: self.perms.iter().map(|p| p.conjugate_by(g)).collect(),
            product_is_identity: self.product_is_identity,
            transitive: self.transitive,
        }
    }

    /// Image tables as a JSON-friendly array of arrays.
    pub fn to_arrays(&self) -> Vec<Vec<u32>> {
        self.perms.iter().map(|p| p.images().to_vec()).collect()
    }
}

impl fmt::Display for Constellation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.perms.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum Violation {
    BranchPointCount { expected: usize, found: usize },
    Degree { expected: u32, found: usize },
    CycleType { slot: usize, expected: Partition, found: Partition },
    Product,
    Transitivity,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BranchPointCount { expected, found } => {
                write!(f, "expected {expected} permutations, found {found}")
            }
            Violation::Degree { expected, found } => write!(f, "expected degree {expected}, found {found}"),
            Violation::CycleType { slot, expected, found } => {
                write!(f, "permutation {slot} has cycle type {found}, expected {expected}")
            }
            Violation::Product => write!(f, "product is not the identity"),
            Violation::Transitivity => write!(f, "generated group is not transitive"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub violation: Option<Violation>,
}

/// Checks cycle types, the product condition and transitivity, in that order.
pub fn verify(c: &Constellation, data: &RamData) -> VerifyReport {
    let fail = |v| VerifyReport { ok: false, violation: Some(v) };
    if c.perms.len() != data.branch_points() {
        return fail(Violation::BranchPointCount { expected: data.branch_points(), found: c.perms.len() });
    }
    if c.degree != data.degree() as usize {
        return fail(Violation::Degree { expected: data.degree(), found: c.degree });
    }
    for (slot, (p, e)) in c.perms.iter().zip(data.partitions()).enumerate() {
        let t = p.cycle_type();
        if &t != e {
            return fail(Violation::CycleType { slot, expected: e.clone(), found: t });
        }
    }
    if !c.product_is_identity {
        return fail(Violation::Product);
    }
    if !c.transitive {
        return fail(Violation::Transitivity);
    }
    VerifyReport { ok: true, violation: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(v: Vec<Vec<u32>>) -> RamData {
        RamData::from_entries(v).unwrap()
    }

    #[test]
    fn verify_examples() {
        let c = Constellation::parse(2, "(0 1) | (0 1)").unwrap();
        assert!(verify(&c, &data(vec![vec![2], vec![2]])).ok);
        let c = Constellation::parse(3, "(0 1 2) | (0 1 2) | (0 1 2)").unwrap();
        assert!(verify(&c, &data(vec![vec![3], vec![3], vec![3]])).ok);
        let c = Constellation::parse(4, "(0 1) | (2 3)").unwrap();
        let r = verify(&c, &data(vec![vec![2, 1, 1], vec![2, 1, 1]]));
        assert!(!r.ok);
        // product check precedes transitivity; (0 1)(2 3) ≠ id so fix the tuple
        assert_eq!(r.violation, Some(Violation::Product));
        let c = Constellation::parse(4, "(0 1) | (0 1)").unwrap();
        let r = verify(&c, &data(vec![vec![2, 1, 1], vec![2, 1, 1]]));
        assert_eq!(r.violation, Some(Violation::Transitivity));
    }

    #[test]
    fn cycle_type_violation_names_slot() {
        let c = Constellation::parse(3, "(0 1 2) | (0 2 1)").unwrap();
        let r = verify(&c, &data(vec![vec![3], vec![2, 1]]));
        assert!(matches!(r.violation, Some(Violation::CycleType { slot: 1, .. })));
    }

    #[test]
    fn json_round_trip() {
        let c = Constellation::parse(5, "(0 1)(2 3 4) | (0 2)(1 3 4) | (0 4 1 2 3)").unwrap();
        assert!(c.product_is_identity());
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, "[[1,0,3,4,2],[2,3,0,4,1],[4,2,3,0,1]]");
        let back: Constellation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn union_find_counts() {
        let mut uf = UnionFind::new(5);
        uf.union(0, 3);
        uf.union(3, 4);
        assert_eq!(uf.components(), 3);
        assert_eq!(uf.find(4), 0);
    }
}
