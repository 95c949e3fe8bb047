//! Splitting `T = [1^{k_i}, 3^{m_i}, 2*]_{i=1..4}` of genus 1 into two genus-1
//! halves with the same irregular content, by the even cases (a)–(c) and the
//! odd cases (d)–(f), with twelve types that admit no such split.

use serde::Serialize;

use crate::ramcore::{FamilySpec, RamError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SplitError {
    #[error("Σk = {k} differs from Σm = {m}, so the family is not of genus 1")]
    Genus { k: u32, m: u32 },
    #[error("k_i + m_i must have the same parity in every slot")]
    Parity,
    #[error("no case applies and {0:?} is not a listed exception")]
    Unsplittable([(u32, u32); 4]),
    #[error(transparent)]
    Ram(#[from] RamError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum SplitOutcome {
    Split { case: char, halves: (FamilySpec, FamilySpec) },
    Exceptional { id: u8 },
    NotApplicable,
}

/// `(k_i, m_i)` of the twelve exceptional types, in their listed slot order.
pub const EXCEPTIONAL_TYPES: [[(u32, u32); 4]; 12] = [
    [(3, 3), (0, 0), (0, 0), (0, 0)],
    [(2, 2), (1, 1), (0, 0), (0, 0)],
    [(1, 3), (2, 0), (0, 0), (0, 0)],
    [(0, 2), (3, 1), (0, 0), (0, 0)],
    [(0, 2), (2, 0), (1, 1), (0, 0)],
    [(1, 1), (1, 1), (1, 1), (0, 0)],
    [(2, 1), (1, 0), (0, 1), (0, 1)],
    [(1, 0), (1, 0), (0, 1), (1, 2)],
    [(1, 0), (1, 0), (1, 0), (0, 3)],
    [(1, 0), (1, 0), (1, 0), (1, 4)],
    [(0, 1), (0, 1), (0, 1), (3, 0)],
    [(0, 1), (0, 1), (0, 1), (4, 1)],
];

fn sorted(t: &[(u32, u32); 4]) -> [(u32, u32); 4] {
    let mut s = *t;
    s.sort_unstable();
    s
}

/// Id (1-based) of the exceptional type equal to `t` up to slot order.
pub fn exceptional_type(t: &[(u32, u32); 4]) -> Option<u8> {
    let s = sorted(t);
    EXCEPTIONAL_TYPES.iter().position(|e| sorted(e) == s).map(|i| i as u8 + 1)
}

pub(crate) fn to_family(t: &[(u32, u32); 4]) -> FamilySpec {
    let irregular = t
        .iter()
        .map(|&(k, m)| {
            let mut a = vec![3; m as usize];
            a.extend(std::iter::repeat_n(1, k as usize));
            a
        })
        .collect();
    FamilySpec::new(vec![2; 4], irregular).expect("entries 1 and 3 never equal 2")
}

/// Neither `[2*]^4` nor `[1,3,2*][2*]^3` in any slot order.
fn acceptable(t: &[(u32, u32); 4]) -> bool {
    let s = sorted(t);
    s != [(0, 0); 4] && s != [(0, 0), (0, 0), (0, 0), (1, 1)]
}

fn permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j])) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

struct Case {
    name: char,
    /// Hypothesis on the permuted `(k, m)`.
    applies: fn(&[(u32, u32); 4]) -> bool,
    /// `(a_i, b_i)` of the first half, in permuted slots.
    first_half: [(u32, u32); 4],
}

const EVEN: [Case; 3] = [
    Case { name: 'a', applies: |t| t[0].0 >= 2 && t[0].1 >= 2, first_half: [(2, 2), (0, 0), (0, 0), (0, 0)] },
    Case {
        name: 'b',
        applies: |t| t[0].0 <= 1 && t[0].1 >= 2 && t[1].0 >= 2,
        first_half: [(0, 2), (2, 0), (0, 0), (0, 0)],
    },
    Case { name: 'c', applies: |t| t.iter().all(|s| s.1 <= 1), first_half: [(1, 1), (1, 1), (0, 0), (0, 0)] },
];

const ODD: [Case; 3] = [
    Case {
        name: 'd',
        applies: |t| t[0].0 >= 1 && t[1].0 >= 1 && t[2].1 >= 1 && t[3].1 >= 1,
        first_half: [(1, 0), (1, 0), (0, 1), (0, 1)],
    },
    Case {
        name: 'e',
        applies: |t| t[1].1 == 0 && t[2].1 == 0 && t[3].1 == 0,
        first_half: [(0, 3), (1, 0), (1, 0), (1, 0)],
    },
    Case {
        name: 'f',
        applies: |t| t[1].0 == 0 && t[2].0 == 0 && t[3].0 == 0,
        first_half: [(3, 0), (0, 1), (0, 1), (0, 1)],
    },
];

/// Splits the family with `k_i` ones and `m_i` threes in slot `i`.
///
/// Cases are tried in order; the first whose hypothesis holds for some slot
/// order is used, with slot orders scanned lexicographically for one whose
/// halves are both acceptable.
pub fn split_2222(k: [u32; 4], m: [u32; 4]) -> Result<SplitOutcome, SplitError> {
    let (sk, sm) = (k.iter().sum::<u32>(), m.iter().sum::<u32>());
    if sk != sm {
        return Err(SplitError::Genus { k: sk, m: sm });
    }
    let parity = (k[0] + m[0]) % 2;
    if (0..4).any(|i| (k[i] + m[i]) % 2 != parity) {
        return Err(SplitError::Parity);
    }
    // ε = Σk + 3Σm = 4Σk
    if 4 * sk <= 10 {
        return Ok(SplitOutcome::NotApplicable);
    }
    let t: [(u32, u32); 4] = std::array::from_fn(|i| (k[i], m[i]));
    let cases = if parity == 0 { &EVEN } else { &ODD };
    let perms = permutations();
    for case in cases {
        let mut hypothesis_met = false;
        for p in &perms {
            let tp: [(u32, u32); 4] = std::array::from_fn(|i| t[p[i]]);
            if !(case.applies)(&tp) {
                continue;
            }
            hypothesis_met = true;
            let mut first = [(0, 0); 4];
            for i in 0..4 {
                first[p[i]] = case.first_half[i];
            }
            if (0..4).any(|i| first[i].0 > t[i].0 || first[i].1 > t[i].1) {
                continue;
            }
            let second: [(u32, u32); 4] = std::array::from_fn(|i| (t[i].0 - first[i].0, t[i].1 - first[i].1));
            if acceptable(&first) && acceptable(&second) {
                return Ok(SplitOutcome::Split { case: case.name, halves: (to_family(&first), to_family(&second)) });
            }
        }
        if hypothesis_met {
            break;
        }
    }
    exceptional_type(&t).map(|id| SplitOutcome::Exceptional { id }).ok_or(SplitError::Unsplittable(t))
}
