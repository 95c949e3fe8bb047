use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::RamError;

/// Multiset of positive integers, stored in descending order so that
/// derived equality is multiset equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut entries: Vec<u32>) -> Result<Self, RamError> {
        if entries.is_empty() {
            return Err(RamError::EmptyPartition);
        }
        if entries.contains(&0) {
            return Err(RamError::ZeroEntry);
        }
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(entries))
    }

    /// `[1^n]`
    pub fn ones(n: u32) -> Result<Self, RamError> {
        Self::new(vec![1; n as usize])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> u32 {
        self.0[0]
    }

    /// A partition with every entry equal to 1 carries no ramification.
    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&e| e == 1)
    }

    pub fn count(&self, entry: u32) -> usize {
        self.0.iter().filter(|&&e| e == entry).count()
    }

    pub fn contains(&self, entry: u32) -> bool {
        self.0.contains(&entry)
    }

    /// Σ (e − 1), the contribution to the Riemann–Hurwitz sum.
    pub fn ramification(&self) -> u32 {
        self.0.iter().map(|&e| e - 1).sum()
    }

    pub fn lcm(&self) -> u32 {
        self.0.iter().fold(1u32, |acc, &e| acc.lcm(&e))
    }

    /// Multiset union.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    /// Every entry multiplied by `factor`.
    pub fn scaled(&self, factor: u32) -> Partition {
        Partition(self.0.iter().map(|&e| e * factor).collect())
    }

    /// Replaces one occurrence of `from` by `to`.
    pub fn replace_one(&self, from: u32, to: u32) -> Option<Partition> {
        let idx = self.0.iter().position(|&e| e == from)?;
        let mut v = self.0.clone();
        v[idx] = to;
        Partition::new(v).ok()
    }

    /// Entries in ascending order, the way ramification data is usually written.
    pub fn ascending(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().rev().copied()
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = RamError;
    fn try_from(v: Vec<u32>) -> Result<Self, Self::Error> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.ascending().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

/// Ordered tuple of nontrivial partitions of a common degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRamData")]
pub struct RamData {
    degree: u32,
    partitions: Vec<Partition>,
}

#[derive(Deserialize)]
struct RawRamData {
    degree: Option<u32>,
    partitions: Vec<Partition>,
}

impl TryFrom<RawRamData> for RamData {
    type Error = RamError;
    fn try_from(raw: RawRamData) -> Result<Self, Self::Error> {
        let data = RamData::new(raw.partitions)?;
        if let Some(n) = raw.degree {
            if n != data.degree {
                return Err(RamError::DegreeMismatch { slot: 0, expected: n, found: data.degree });
            }
        }
        Ok(data)
    }
}

/// Genus value that is not a nonnegative integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("genus {raw} is not a nonnegative integer")]
pub struct GenusRejection {
    pub raw: Rational64,
}

impl RamData {
    pub fn new(partitions: Vec<Partition>) -> Result<Self, RamError> {
        if partitions.len() < 2 {
            return Err(RamError::TooFewPartitions(partitions.len()));
        }
        let degree = partitions[0].sum();
        for (slot, p) in partitions.iter().enumerate() {
            if p.sum() != degree {
                return Err(RamError::DegreeMismatch { slot, expected: degree, found: p.sum() });
            }
            if p.is_trivial() {
                return Err(RamError::TrivialPartition { slot });
            }
        }
        Ok(RamData { degree, partitions })
    }

    pub fn from_entries(entries: Vec<Vec<u32>>) -> Result<Self, RamError> {
        let parts = entries.into_iter().map(Partition::new).collect::<Result<Vec<_>, _>>()?;
        Self::new(parts)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn branch_points(&self) -> usize {
        self.partitions.len()
    }

    /// 1 − n + ½ Σ_i Σ_{e ∈ E_i} (e − 1), exactly.
    pub fn raw_genus(&self) -> Rational64 {
        let ram: i64 = self.partitions.iter().map(|p| p.ramification() as i64).sum();
        Rational64::new(2 - 2 * self.degree as i64 + ram, 2)
    }

    pub fn genus(&self) -> Result<u32, GenusRejection> {
        let raw = self.raw_genus();
        if raw.is_integer() && *raw.numer() >= 0 {
            Ok(*raw.numer() as u32)
        } else {
            Err(GenusRejection { raw })
        }
    }
}

impl fmt::Display for RamData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.partitions {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(v: Vec<Vec<u32>>) -> RamData {
        RamData::from_entries(v).unwrap()
    }

    #[test]
    fn genus_of_small_examples() {
        assert_eq!(data(vec![vec![2], vec![2]]).genus(), Ok(0));
        assert_eq!(data(vec![vec![3], vec![3], vec![3]]).genus(), Ok(1));
        assert_eq!(data(vec![vec![1, 3], vec![2, 2], vec![2, 2], vec![2, 2]]).genus(), Ok(1));
    }

    #[test]
    fn mismatched_sums_are_rejected() {
        let err = RamData::from_entries(vec![vec![2], vec![3]]).unwrap_err();
        assert!(matches!(err, RamError::DegreeMismatch { slot: 1, .. }));
    }

    #[test]
    fn trivial_partition_rejected() {
        let err = RamData::from_entries(vec![vec![2], vec![1, 1]]).unwrap_err();
        assert_eq!(err, RamError::TrivialPartition { slot: 1 });
    }

    #[test]
    fn half_integer_genus_carries_raw_value() {
        let d = data(vec![vec![2, 1], vec![2, 1], vec![2, 1]]);
        let rej = d.genus().unwrap_err();
        assert_eq!(rej.raw, Rational64::new(-1, 2));
        let d = data(vec![vec![2, 1, 1], vec![2, 1, 1]]);
        assert_eq!(d.genus().unwrap_err().raw, Rational64::from_integer(-2));
    }

    #[test]
    fn partitions_are_canonical() {
        let a = Partition::new(vec![1, 3, 2]).unwrap();
        let b = Partition::new(vec![3, 2, 1]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.entries(), &[3, 2, 1]);
        assert_eq!(a.to_string(), "[1,2,3]");
        assert_eq!(Partition::new(vec![4, 6]).unwrap().lcm(), 12);
        assert!(Partition::new(vec![]).is_err());
        assert!(Partition::new(vec![0, 2]).is_err());
    }

    #[test]
    fn json_shape() {
        let d = data(vec![vec![1, 3], vec![2, 2]]);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"degree":4,"partitions":[[3,1],[2,2]]}"#);
        let back: RamData = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<RamData>(r#"{"degree":5,"partitions":[[3,1],[2,2]]}"#).is_err());
    }
}
