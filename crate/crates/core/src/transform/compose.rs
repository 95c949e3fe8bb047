use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::ramcore::{Partition, RamData, RamError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ComposeError {
    #[error("fiber over '{point}' has multiplicities summing to {sum}, expected {degree}")]
    FiberSum { point: String, sum: u32, degree: u32 },
    #[error("{placed} placements for {branch_points} branch points")]
    Unplaced { placed: usize, branch_points: usize },
    #[error("branch points {0} and {1} are placed at the same point")]
    Collision(usize, usize),
    #[error("'{0}' is not a listed preimage of the base map")]
    UnknownPoint(String),
    #[error("preimage '{0}' occurs twice in the base map")]
    DuplicatePreimage(String),
    #[error(transparent)]
    Ram(#[from] RamError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fiber {
    pub target: String,
    /// `(preimage, ramification index)`
    pub points: Vec<(String, u32)>,
}

/// A rational map of degree `d` described by the fibers over its points of interest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseMap {
    pub name: String,
    pub degree: u32,
    pub fibers: Vec<Fiber>,
}

fn fiber(target: &str, points: &[(&str, u32)]) -> Fiber {
    Fiber { target: target.into(), points: points.iter().map(|&(p, e)| (p.into(), e)).collect() }
}

impl BaseMap {
    pub fn new(name: impl Into<String>, degree: u32, fibers: Vec<Fiber>) -> Result<Self, ComposeError> {
        let mut seen = std::collections::HashSet::new();
        for f in &fibers {
            let sum: u32 = f.points.iter().map(|p| p.1).sum();
            if sum != degree {
                return Err(ComposeError::FiberSum { point: f.target.clone(), sum, degree });
            }
            for (p, _) in &f.points {
                if !seen.insert(p.clone()) {
                    return Err(ComposeError::DuplicatePreimage(p.clone()));
                }
            }
        }
        Ok(BaseMap { name: name.into(), degree, fibers })
    }

    /// `x ↦ x²`, branched over 0 and ∞.
    pub fn square() -> Self {
        BaseMap {
            name: "x^2".into(),
            degree: 2,
            fibers: vec![
                fiber("0", &[("0", 2)]),
                fiber("1", &[("1", 1), ("-1", 1)]),
                fiber("inf", &[("inf", 2)]),
                fiber("-1", &[("i", 1), ("-i", 1)]),
            ],
        }
    }

    /// `x ↦ x³`, branched over 0 and ∞.
    pub fn cube() -> Self {
        BaseMap {
            name: "x^3".into(),
            degree: 3,
            fibers: vec![
                fiber("0", &[("0", 3)]),
                fiber("1", &[("1", 1), ("w", 1), ("w2", 1)]),
                fiber("inf", &[("inf", 3)]),
                fiber("-1", &[("-1", 1), ("-w", 1), ("-w2", 1)]),
            ],
        }
    }

    pub fn identity() -> Self {
        let pts = ["0", "1", "inf", "-1", "i", "-i"];
        BaseMap { name: "x".into(), degree: 1, fibers: pts.iter().map(|p| fiber(p, &[(p, 1)])).collect() }
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "x^2" | "x2" | "square" => Some(Self::square()),
            "x^3" | "x3" | "cube" => Some(Self::cube()),
            "x" | "id" | "identity" => Some(Self::identity()),
            _ => None,
        }
    }
}

/// Ramification data of `g∘f` where branch point `i` of `f` sits at the preimage `placement[i]`.
pub fn compose(f: &RamData, placement: &[String], g: &BaseMap) -> Result<RamData, ComposeError> {
    let r = f.branch_points();
    if placement.len() != r {
        return Err(ComposeError::Unplaced { placed: placement.len(), branch_points: r });
    }
    let mut at: HashMap<&str, usize> = HashMap::new();
    for (i, p) in placement.iter().enumerate() {
        if !g.fibers.iter().any(|fb| fb.points.iter().any(|(q, _)| q == p)) {
            return Err(ComposeError::UnknownPoint(p.clone()));
        }
        if let Some(&j) = at.get(p.as_str()) {
            return Err(ComposeError::Collision(j, i));
        }
        at.insert(p, i);
    }
    let n = f.degree();
    let ones = Partition::ones(n)?;
    let mut parts = Vec::new();
    for fb in &g.fibers {
        let mut entries = Vec::new();
        for (p, e) in &fb.points {
            let part = at.get(p.as_str()).map_or(&ones, |&i| &f.partitions()[i]);
            entries.extend(part.entries().iter().map(|&x| x * e));
        }
        let part = Partition::new(entries)?;
        if !part.is_trivial() {
            parts.push(part);
        }
    }
    Ok(RamData::new(parts)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(v: Vec<Vec<u32>>) -> RamData {
        RamData::from_entries(v).unwrap()
    }

    fn place(p: &[&str]) -> Vec<String> {
        p.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn regular_333_under_square() {
        let f = data(vec![vec![3], vec![3], vec![3]]);
        let out = compose(&f, &place(&["inf", "1", "-1"]), &BaseMap::square()).unwrap();
        assert_eq!(out, data(vec![vec![2, 2, 2], vec![3, 3], vec![6]]));
    }

    #[test]
    fn identity_is_neutral() {
        let f = data(vec![vec![1, 3], vec![2, 2], vec![2, 2], vec![2, 2]]);
        let out = compose(&f, &place(&["0", "1", "inf", "-1"]), &BaseMap::identity()).unwrap();
        assert_eq!(out, f);
    }

    #[test]
    fn cube_multiplies_degree() {
        let f = data(vec![vec![2], vec![2]]);
        let out = compose(&f, &place(&["0", "1"]), &BaseMap::cube()).unwrap();
        assert_eq!(out.degree(), 6);
        assert_eq!(out, data(vec![vec![6], vec![2, 1, 1, 1, 1], vec![3, 3]]));
    }

    #[test]
    fn placement_errors() {
        let f = data(vec![vec![2], vec![2]]);
        let g = BaseMap::square();
        assert_eq!(compose(&f, &place(&["1", "1"]), &g), Err(ComposeError::Collision(0, 1)));
        assert!(matches!(compose(&f, &place(&["1"]), &g), Err(ComposeError::Unplaced { .. })));
        assert!(matches!(compose(&f, &place(&["1", "7"]), &g), Err(ComposeError::UnknownPoint(_))));
        assert!(BaseMap::new("bad", 2, vec![fiber("0", &[("0", 3)])]).is_err());
    }
}
