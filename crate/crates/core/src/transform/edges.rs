use crate::permsearch::{Constellation, Perm};
use crate::ramcore::{Partition, RamData, RamError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EdgeError {
    #[error("need at least 3 branch points, got {0}")]
    TooFewBranchPoints(usize),
    #[error("the two slots must differ")]
    SameSlot,
    #[error("slot {0} out of range")]
    SlotOutOfRange(usize),
    #[error("slot {slot} has no entry {entry}")]
    MissingEntry { slot: usize, entry: u32 },
    #[error("no point lies in a {a}-cycle of σ_{slot_a} and a {b}-cycle of σ_{slot_b}")]
    NoCommonPoint { slot_a: usize, a: u32, slot_b: usize, b: u32 },
    #[error("constellation must have identity product and be transitive")]
    NotAWitness,
    #[error(transparent)]
    Ram(#[from] RamError),
}

fn check(r: usize, slot_a: usize, slot_b: usize) -> Result<(), EdgeError> {
    if r < 3 {
        return Err(EdgeError::TooFewBranchPoints(r));
    }
    if slot_a == slot_b {
        return Err(EdgeError::SameSlot);
    }
    for s in [slot_a, slot_b] {
        if s >= r {
            return Err(EdgeError::SlotOutOfRange(s));
        }
    }
    Ok(())
}

/// Joins a vertex of degree `a` in `slot_a` to one of degree `b` in `slot_b`
/// with `k` new edges: the two entries grow by `k` and every other slot gains
/// `k` entries equal to 1.
pub fn add_edges(t: &RamData, slot_a: usize, a: u32, slot_b: usize, b: u32, k: u32) -> Result<RamData, EdgeError> {
    check(t.branch_points(), slot_a, slot_b)?;
    let parts = t.partitions();
    let ones = Partition::ones(k.max(1))?;
    let mut out = Vec::with_capacity(parts.len());
    for (i, p) in parts.iter().enumerate() {
        let q = if i == slot_a || i == slot_b {
            let e = if i == slot_a { a } else { b };
            p.replace_one(e, e + k).ok_or(EdgeError::MissingEntry { slot: i, entry: e })?
        } else if k > 0 {
            p.union(&ones)
        } else {
            p.clone()
        };
        out.push(q);
    }
    Ok(RamData::new(out)?)
}

/// The same move on a witness. With `τ = (x y_1 … y_k)` on the new points
/// `y_j`, the lower of the two slots becomes `σ∘τ`, the higher `τ⁻¹∘σ`, and
/// the slots in between are conjugated by `τ⁻¹`, so the product stays the
/// identity.
pub fn add_edges_witness(
    c: &Constellation,
    slot_a: usize,
    a: u32,
    slot_b: usize,
    b: u32,
    k: u32,
) -> Result<Constellation, EdgeError> {
    let perms = c.perms();
    check(perms.len(), slot_a, slot_b)?;
    if !c.product_is_identity() || !c.is_transitive() {
        return Err(EdgeError::NotAWitness);
    }
    let n = c.degree();
    let cycle_len = |p: &Perm, x: u32| {
        let mut len = 1;
        let mut y = p.apply(x);
        while y != x {
            y = p.apply(y);
            len += 1;
        }
        len
    };
    let x = (0..n as u32)
        .find(|&x| cycle_len(&perms[slot_a], x) == a && cycle_len(&perms[slot_b], x) == b)
        .ok_or(EdgeError::NoCommonPoint { slot_a, a, slot_b, b })?;
    let m = n + k as usize;
    let extend = |p: &Perm| {
        let mut images = p.images().to_vec();
        images.extend(n as u32..m as u32);
        Perm::from_images(images).expect("extension of a bijection")
    };
    let mut cycle = vec![x];
    cycle.extend(n as u32..m as u32);
    let tau = Perm::from_cycles(m, &[cycle]).expect("distinct points");
    let tau_inv = tau.inverse();
    let (lo, hi) = (slot_a.min(slot_b), slot_a.max(slot_b));
    let out = perms
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let p = extend(p);
            if i == lo {
                p.compose(&tau)
            } else if i == hi {
                tau_inv.compose(&p)
            } else if lo < i && i < hi {
                p.conjugate_by(&tau_inv)
            } else {
                p
            }
        })
        .collect();
    Ok(Constellation::new(out).expect("common degree"))
}
