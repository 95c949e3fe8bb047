use std::collections::BTreeSet;

use num_rational::Rational64;

use super::family::is_euclidean;
use super::{FamilySpec, RamError};

/// Multisets (descending) of positive integers avoiding `forbid`, with sum ≤ `max_sum`.
fn multisets(max_sum: u32, forbid: u32) -> Vec<Vec<u32>> {
    fn rec(rem: u32, max_part: u32, forbid: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        for p in (1..=rem.min(max_part)).rev() {
            if p == forbid {
                continue;
            }
            cur.push(p);
            rec(rem - p, p, forbid, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(max_sum, max_sum, forbid, &mut Vec::new(), &mut out);
    out
}

/// All almost-regular families over a Euclidean `base` with error at most
/// `eps_max`, the given genus and at least one valid degree, one per class
/// under swapping slots with equal base entries. The base is sorted ascending
/// first; output is in canonical family order.
pub fn enumerate_families(base: &[u32], target_genus: u32, eps_max: u32) -> Result<Vec<FamilySpec>, RamError> {
    if !is_euclidean(base) {
        return Err(RamError::UnsupportedBase(base.to_vec()));
    }
    let mut base = base.to_vec();
    base.sort_unstable();
    let options: Vec<Vec<(Vec<u32>, u32, Rational64)>> = base
        .iter()
        .map(|&k| {
            multisets(eps_max, k)
                .into_iter()
                .map(|a| {
                    let s: u32 = a.iter().sum();
                    let contrib = Rational64::new(s as i64, k as i64) - Rational64::from_integer(a.len() as i64);
                    (a, s, contrib)
                })
                .collect()
        })
        .collect();
    // Σ_j (s_j/k_j − |A_j|) = 2g − 2
    let target = Rational64::from_integer(2 * target_genus as i64 - 2);
    let mut found = BTreeSet::new();
    let mut chosen = Vec::with_capacity(base.len());
    collect(&base, &options, 0, eps_max, Rational64::from_integer(0), target, &mut chosen, &mut found);
    Ok(found.into_iter().collect())
}

#[allow(clippy::too_many_arguments)]
fn collect(
    base: &[u32],
    options: &[Vec<(Vec<u32>, u32, Rational64)>],
    slot: usize,
    remaining: u32,
    acc: Rational64,
    target: Rational64,
    chosen: &mut Vec<Vec<u32>>,
    found: &mut BTreeSet<FamilySpec>,
) {
    if slot == base.len() {
        if acc != target {
            return;
        }
        let f = FamilySpec::new(base.to_vec(), chosen.clone()).expect("options avoid the regular value");
        if f.valid_degrees().is_some() {
            found.insert(f.canonical());
        }
        return;
    }
    for (a, s, c) in &options[slot] {
        if *s > remaining {
            continue;
        }
        chosen.push(a.clone());
        collect(base, options, slot + 1, remaining - s, acc + c, target, chosen, found);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_family_is_the_only_zero_error_one() {
        let fams = enumerate_families(&[2, 3, 6], 1, 0).unwrap();
        assert_eq!(fams, vec![FamilySpec::regular(vec![2, 3, 6]).unwrap()]);
        assert!(enumerate_families(&[2, 3, 6], 0, 0).unwrap().is_empty());
    }

    #[test]
    fn table_sizes() {
        let cases = [
            (&[3u32, 3, 3][..], 10, 11, 20),
            (&[2, 3, 6][..], 6, 6, 17),
            (&[2, 4, 4][..], 6, 3, 7),
            (&[2, 2, 2, 2][..], 10, 23, 18),
        ];
        for (base, eps, g1, g0) in cases {
            assert_eq!(enumerate_families(base, 1, eps).unwrap().len(), g1, "{base:?} genus 1");
            assert_eq!(enumerate_families(base, 0, eps).unwrap().len(), g0, "{base:?} genus 0");
        }
    }

    #[test]
    fn base_order_does_not_matter() {
        let a = enumerate_families(&[6, 2, 3], 1, 6).unwrap();
        let b = enumerate_families(&[2, 3, 6], 1, 6).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_hyperbolic_base() {
        assert!(enumerate_families(&[2, 3, 7], 1, 4).is_err());
    }

    #[test]
    fn multiset_generation() {
        assert_eq!(multisets(3, 2), vec![vec![], vec![3], vec![1], vec![1, 1], vec![1, 1, 1]]);
    }
}
