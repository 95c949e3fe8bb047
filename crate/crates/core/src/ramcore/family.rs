use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::{GenusRejection, Partition, RamData, RamError};

/// Almost-regular family `[A_1, k_1^*] … [A_r, k_r^*]`.
///
/// `irregular[j]` is the fixed multiset `A_j` (descending, possibly empty);
/// every member of the family fills slot `j` up to the degree with copies of
/// `base[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFamily")]
pub struct FamilySpec {
    base: Vec<u32>,
    irregular: Vec<Vec<u32>>,
}

#[derive(Deserialize)]
struct RawFamily {
    base: Vec<u32>,
    irregular: Vec<Vec<u32>>,
}

impl TryFrom<RawFamily> for FamilySpec {
    type Error = RamError;
    fn try_from(raw: RawFamily) -> Result<Self, Self::Error> {
        FamilySpec::new(raw.base, raw.irregular)
    }
}

/// Arithmetic progression `first, first + step, …` of admissible degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProgression {
    pub first: u32,
    pub step: u32,
}

impl DegreeProgression {
    pub fn iter(&self) -> impl Iterator<Item = u32> {
        let (first, step) = (self.first, self.step);
        (0u32..).map(move |i| first + i * step)
    }

    pub fn contains(&self, n: u32) -> bool {
        n >= self.first && (n - self.first).is_multiple_of(self.step)
    }
}

/// The four Euclidean bases, i.e. Σ (1 − 1/k_j) = 2.
pub const EUCLIDEAN_BASES: [&[u32]; 4] = [&[2, 2, 2, 2], &[3, 3, 3], &[2, 4, 4], &[2, 3, 6]];

pub fn is_euclidean(base: &[u32]) -> bool {
    if base.iter().any(|&k| k < 2) {
        return false;
    }
    let sum: Rational64 = base.iter().map(|&k| Rational64::new(k as i64 - 1, k as i64)).sum();
    sum == Rational64::from_integer(2)
}

impl FamilySpec {
    pub fn new(base: Vec<u32>, irregular: Vec<Vec<u32>>) -> Result<Self, RamError> {
        if base.len() < 2 {
            return Err(RamError::TooFewPartitions(base.len()));
        }
        if base.len() != irregular.len() {
            return Err(RamError::SlotCountMismatch { base: base.len(), irregular: irregular.len() });
        }
        let mut irr = Vec::with_capacity(irregular.len());
        for (slot, (k, mut a)) in base.iter().copied().zip(irregular).enumerate() {
            if k < 2 {
                return Err(RamError::BaseEntryTooSmall { slot, k });
            }
            if a.contains(&0) {
                return Err(RamError::ZeroEntry);
            }
            if a.contains(&k) {
                return Err(RamError::RegularEntryInIrregular { slot, k });
            }
            a.sort_unstable_by(|x, y| y.cmp(x));
            irr.push(a);
        }
        Ok(FamilySpec { base, irregular: irr })
    }

    /// The regular family with base `base`.
    pub fn regular(base: Vec<u32>) -> Result<Self, RamError> {
        let r = base.len();
        Self::new(base, vec![Vec::new(); r])
    }

    pub fn base(&self) -> &[u32] {
        &self.base
    }

    pub fn irregular(&self) -> &[Vec<u32>] {
        &self.irregular
    }

    pub fn slots(&self) -> usize {
        self.base.len()
    }

    /// ε = Σ_j Σ_{a ∈ A_j} a.
    pub fn error(&self) -> u32 {
        self.slot_sums().iter().sum()
    }

    pub fn slot_sums(&self) -> Vec<u32> {
        self.irregular.iter().map(|a| a.iter().sum()).collect()
    }

    pub fn is_euclidean(&self) -> bool {
        is_euclidean(&self.base)
    }

    pub fn is_regular(&self) -> bool {
        self.irregular.iter().all(|a| a.is_empty())
    }

    /// 2·(g − 1) = Σ_j (s_j / k_j − |A_j|); independent of the degree for Euclidean bases.
    fn raw_genus(&self) -> Rational64 {
        let sum: Rational64 = self
            .base
            .iter()
            .zip(&self.irregular)
            .map(|(&k, a)| {
                let s: u32 = a.iter().sum();
                Rational64::new(s as i64, k as i64) - Rational64::from_integer(a.len() as i64)
            })
            .sum();
        Rational64::from_integer(1) + sum / 2
    }

    /// Genus shared by every member of a family over a Euclidean base.
    pub fn genus(&self) -> Result<u32, RamError> {
        if !self.is_euclidean() {
            return Err(RamError::UnsupportedBase(self.base.clone()));
        }
        let raw = self.raw_genus();
        if raw.is_integer() && *raw.numer() >= 0 {
            Ok(*raw.numer() as u32)
        } else {
            Err(RamError::GenusRejected(GenusRejection { raw }))
        }
    }

    /// The member of degree `n`.
    pub fn member(&self, n: u32) -> Result<RamData, RamError> {
        let mut parts = Vec::with_capacity(self.slots());
        for (slot, (&k, a)) in self.base.iter().zip(&self.irregular).enumerate() {
            let s: u32 = a.iter().sum();
            if n < s {
                return Err(RamError::InvalidDegree { degree: n, slot, reason: "below the irregular sum" });
            }
            if !(n - s).is_multiple_of(k) {
                return Err(RamError::InvalidDegree { degree: n, slot, reason: "congruence violated" });
            }
            let mut entries = a.clone();
            entries.extend(std::iter::repeat_n(k, ((n - s) / k) as usize));
            let p = Partition::new(entries).map_err(|_| RamError::InvalidDegree {
                degree: n,
                slot,
                reason: "empty slot",
            })?;
            if p.is_trivial() {
                return Err(RamError::InvalidDegree { degree: n, slot, reason: "trivial partition" });
            }
            parts.push(p);
        }
        RamData::new(parts)
    }

    /// All degrees with a well-defined member, or `None` when the congruences
    /// n ≡ s_j (mod k_j) are inconsistent.
    pub fn valid_degrees(&self) -> Option<DegreeProgression> {
        let mut residue: u64 = 0;
        let mut modulus: u64 = 1;
        for (&k, s) in self.base.iter().zip(self.slot_sums()) {
            let (k, s) = (k as u64, s as u64 % k as u64);
            let g = modulus.gcd(&k);
            if !(s + g * k - residue % k).is_multiple_of(g) {
                return None;
            }
            let lcm = modulus / g * k;
            let mut x = residue;
            while x % k != s {
                x += modulus;
            }
            residue = x % lcm;
            modulus = lcm;
        }
        let step = modulus as u32;
        let lower = self.slot_sums().into_iter().max().unwrap_or(0).max(1);
        let mut n = residue as u32;
        while n < lower {
            n += step;
        }
        // at most one extra step: once n ≥ s_j + k_j every slot carries a k_j entry
        while self.member(n).is_err() {
            n += step;
        }
        Some(DegreeProgression { first: n, step })
    }

    /// Lexicographically least arrangement under permutations of slots with equal `k_j`.
    pub fn canonical(&self) -> FamilySpec {
        let mut groups: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, &k) in self.base.iter().enumerate() {
            groups.entry(k).or_default().push(i);
        }
        let mut irregular = self.irregular.clone();
        for slots in groups.values() {
            let mut contents: Vec<Vec<u32>> = slots.iter().map(|&i| self.irregular[i].clone()).collect();
            contents.sort();
            for (&i, a) in slots.iter().zip(contents) {
                irregular[i] = a;
            }
        }
        FamilySpec { base: self.base.clone(), irregular }
    }

    /// Slots permuted: slot `i` of the result is slot `order[i]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> FamilySpec {
        FamilySpec {
            base: order.iter().map(|&i| self.base[i]).collect(),
            irregular: order.iter().map(|&i| self.irregular[i].clone()).collect(),
        }
    }

    /// Recovers the family of `data` over `base` by stripping every `k_j` entry.
    pub fn from_member(data: &RamData, base: &[u32]) -> Result<FamilySpec, RamError> {
        if data.branch_points() != base.len() {
            return Err(RamError::SlotCountMismatch { base: base.len(), irregular: data.branch_points() });
        }
        let irregular = data
            .partitions()
            .iter()
            .zip(base)
            .map(|(p, &k)| p.entries().iter().copied().filter(|&e| e != k).collect())
            .collect();
        FamilySpec::new(base.to_vec(), irregular)
    }

    /// Classifies concrete data as a generalized almost-regular member: the
    /// base entry of each slot is its most frequent entry ≥ 2, ties going to
    /// the larger value.
    pub fn classify(data: &RamData) -> Result<FamilySpec, RamError> {
        let base = data
            .partitions()
            .iter()
            .map(|p| {
                let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
                for &e in p.entries().iter().filter(|&&e| e >= 2) {
                    *counts.entry(e).or_default() += 1;
                }
                counts.into_iter().max_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0))).map(|(e, _)| e).unwrap_or(2)
            })
            .collect::<Vec<_>>();
        Self::from_member(data, &base)
    }

    /// Slotwise multiset union; ε adds.
    pub fn merge(&self, other: &FamilySpec) -> Result<FamilySpec, RamError> {
        if self.base != other.base {
            return Err(RamError::BaseMismatch(self.base.clone(), other.base.clone()));
        }
        let irregular =
            self.irregular.iter().zip(&other.irregular).map(|(a, b)| a.iter().chain(b).copied().collect()).collect();
        FamilySpec::new(self.base.clone(), irregular)
    }

    fn sort_key(&self) -> (&[u32], u32, &[Vec<u32>]) {
        (&self.base, self.error(), &self.irregular)
    }
}

impl PartialOrd for FamilySpec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FamilySpec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, a) in self.base.iter().zip(&self.irregular) {
            write!(f, "[")?;
            if !a.is_empty() {
                let body: Vec<String> = a.iter().rev().map(u32::to_string).collect();
                write!(f, "{}|", body.join(","))?;
            }
            write!(f, "{k}*]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(base: &[u32], irr: &[&[u32]]) -> FamilySpec {
        FamilySpec::new(base.to_vec(), irr.iter().map(|a| a.to_vec()).collect()).unwrap()
    }

    fn type_a() -> FamilySpec {
        fam(&[2, 2, 2, 2], &[&[1, 3], &[], &[], &[]])
    }

    #[test]
    fn family_genus_examples() {
        assert_eq!(type_a().genus(), Ok(1));
        assert_eq!(fam(&[3, 3, 3], &[&[], &[], &[]]).genus(), Ok(1));
        assert_eq!(fam(&[2, 2, 2, 2], &[&[1], &[1], &[1], &[1]]).genus(), Ok(0));
        let err = fam(&[2, 3, 7], &[&[], &[], &[]]).genus().unwrap_err();
        assert!(matches!(err, RamError::UnsupportedBase(_)));
        assert!(matches!(fam(&[3, 3, 3], &[&[6], &[], &[]]).genus(), Err(RamError::GenusRejected(_))));
    }

    #[test]
    fn members() {
        let m = type_a().member(6).unwrap();
        assert_eq!(m, RamData::from_entries(vec![vec![1, 3, 2], vec![2, 2, 2], vec![2, 2, 2], vec![2, 2, 2]]).unwrap());
        assert!(matches!(type_a().member(5), Err(RamError::InvalidDegree { degree: 5, .. })));
        let f15 = fam(&[2, 3, 6], &[&[], &[1, 5], &[]]);
        assert_eq!(f15.member(6).unwrap(), RamData::from_entries(vec![vec![2, 2, 2], vec![1, 5], vec![6]]).unwrap());
    }

    #[test]
    fn member_rejects_trivial_slot() {
        let f = fam(&[2, 2, 2, 2], &[&[1, 1, 1, 1], &[], &[], &[]]);
        assert!(matches!(f.member(4), Err(RamError::InvalidDegree { slot: 0, reason: "trivial partition", .. })));
        assert!(f.member(6).is_ok());
        assert_eq!(f.valid_degrees(), Some(DegreeProgression { first: 6, step: 2 }));
    }

    #[test]
    fn valid_degree_progressions() {
        assert_eq!(type_a().valid_degrees(), Some(DegreeProgression { first: 4, step: 2 }));
        assert_eq!(fam(&[3, 3, 3], &[&[], &[], &[]]).valid_degrees(), Some(DegreeProgression { first: 3, step: 3 }));
        // n ≡ 1 (mod 2) and n ≡ 0 (mod 6) cannot both hold
        assert_eq!(fam(&[2, 3, 6], &[&[1], &[], &[]]).valid_degrees(), None);
        assert_eq!(
            fam(&[2, 3, 6], &[&[], &[1, 5], &[]]).valid_degrees(),
            Some(DegreeProgression { first: 6, step: 6 })
        );
        // [1,2*]^3 [5,2*]
        let f25 = fam(&[2, 2, 2, 2], &[&[1], &[1], &[1], &[5]]);
        assert_eq!(f25.valid_degrees(), Some(DegreeProgression { first: 5, step: 2 }));
    }

    #[test]
    fn canonical_form_sorts_equal_slots() {
        let f = fam(&[3, 3, 3], &[&[1, 5], &[], &[]]);
        assert_eq!(f.canonical(), fam(&[3, 3, 3], &[&[], &[], &[1, 5]]));
        let g = fam(&[2, 4, 4], &[&[1, 1], &[2], &[]]);
        assert_eq!(g.canonical(), fam(&[2, 4, 4], &[&[1, 1], &[], &[2]]));
    }

    #[test]
    fn strip_and_classify() {
        let m = type_a().member(8).unwrap();
        assert_eq!(FamilySpec::from_member(&m, &[2, 2, 2, 2]).unwrap(), type_a());
        assert_eq!(FamilySpec::classify(&m).unwrap(), type_a());
        let d = RamData::from_entries(vec![vec![3, 3, 2, 2], vec![2, 2, 2, 2, 2], vec![10]]).unwrap();
        // slot 0 ties between 2 and 3: larger wins
        assert_eq!(FamilySpec::classify(&d).unwrap().base(), &[3, 2, 10]);
    }

    #[test]
    fn rejects_regular_value_in_irregular_part() {
        let err = FamilySpec::new(vec![2, 2, 2, 2], vec![vec![2], vec![], vec![], vec![]]).unwrap_err();
        assert_eq!(err, RamError::RegularEntryInIrregular { slot: 0, k: 2 });
    }

    #[test]
    fn display_uses_bar_grammar() {
        assert_eq!(type_a().to_string(), "[1,3|2*][2*][2*][2*]");
    }

    #[test]
    fn merge_adds_errors() {
        let a = type_a();
        let b = fam(&[2, 2, 2, 2], &[&[], &[1, 3], &[], &[]]);
        let m = a.merge(&b).unwrap();
        assert_eq!(m, fam(&[2, 2, 2, 2], &[&[1, 3], &[1, 3], &[], &[]]));
        assert_eq!(m.error(), a.error() + b.error());
        let regular = FamilySpec::regular(vec![2, 2, 2, 2]).unwrap();
        assert_eq!(a.merge(&regular).unwrap(), a);
        assert!(a.merge(&FamilySpec::regular(vec![3, 3, 3]).unwrap()).is_err());
    }
}
