//! Bicolored-map view of a constellation.

use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::permsearch::{verify, Constellation, Perm, Violation};
use crate::ramcore::{Partition, RamData, RamError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DessinError {
    #[error("constellation does not verify: {0}")]
    Unverified(Violation),
    #[error(transparent)]
    Ram(#[from] RamError),
}

/// Sheets `0..n` are the central vertices; the cycles of `σ_j` for `j < r`
/// are the vertices of color `j` and the cycles of `σ_r` are the faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dessin {
    constellation: Constellation,
    cycle_counts: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerCount {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub chi: i64,
    pub genus: i64,
}

impl Dessin {
    /// Wraps a constellation whose product is the identity and whose group is transitive.
    pub fn from_constellation(c: Constellation) -> Result<Dessin, DessinError> {
        if c.perms().len() < 2 {
            return Err(DessinError::Ram(RamError::TooFewPartitions(c.perms().len())));
        }
        if !c.product_is_identity() {
            return Err(DessinError::Unverified(Violation::Product));
        }
        if !c.is_transitive() {
            return Err(DessinError::Unverified(Violation::Transitivity));
        }
        let cycle_counts = c.perms().iter().map(Perm::num_cycles).collect();
        Ok(Dessin { constellation: c, cycle_counts })
    }

    /// Like [`Dessin::from_constellation`], additionally checking the cycle types against `data`.
    pub fn from_verified(c: Constellation, data: &RamData) -> Result<Dessin, DessinError> {
        let report = verify(&c, data);
        if let Some(v) = report.violation {
            return Err(DessinError::Unverified(v));
        }
        Dessin::from_constellation(c)
    }

    pub fn constellation(&self) -> &Constellation {
        &self.constellation
    }

    pub fn degree(&self) -> usize {
        self.constellation.degree()
    }

    pub fn euler(&self) -> EulerCount {
        let n = self.degree();
        let r = self.cycle_counts.len();
        let vertices = n + self.cycle_counts[..r - 1].iter().sum::<usize>();
        let edges = (r - 1) * n;
        let faces = self.cycle_counts[r - 1];
        let chi = vertices as i64 - edges as i64 + faces as i64;
        EulerCount { vertices, edges, faces, chi, genus: (2 - chi) / 2 }
    }

    pub fn vertex_degrees(&self, color: usize) -> Partition {
        self.constellation.perms()[color].cycle_type()
    }

    pub fn face_degrees(&self) -> Partition {
        self.constellation.perms().last().expect("r ≥ 2").cycle_type()
    }

    /// Vertex degrees per color followed by the face degrees.
    pub fn ram_type(&self) -> Result<RamData, RamError> {
        RamData::new(self.constellation.cycle_types())
    }

    /// Relabeling that yields the least image-table encoding, its encoding and digest.
    pub fn canonical_form(&self) -> CanonicalForm {
        let perms = self.constellation.perms();
        let n = self.degree();
        let mut best: Option<(Vec<u32>, Vec<u32>)> = None;
        for seed in 0..n as u32 {
            let label = bfs_labeling(perms, seed);
            let enc = encode(perms, &label);
            if best.as_ref().is_none_or(|(b, _)| enc < *b) {
                best = Some((enc, label));
            }
        }
        let (encoding, relabel) = best.expect("degree ≥ 1");
        let mut hasher = Sha256::new();
        hasher.update((n as u32).to_le_bytes());
        hasher.update((perms.len() as u32).to_le_bytes());
        for x in &encoding {
            hasher.update(x.to_le_bytes());
        }
        CanonicalForm { relabel, encoding, digest: hex::encode(hasher.finalize()) }
    }

    /// Bipartite incidence graph in DOT: sheet `s` joins the vertex of color
    /// `j` containing it, for every `j < r`.
    pub fn export_dot(&self) -> String {
        let perms = self.constellation.perms();
        let r = perms.len();
        let n = self.degree();
        let mut out = String::new();
        out.push_str("graph dessin {\n");
        let _ = writeln!(out, "  graph [degree={n}, faces=\"{}\"];", self.face_degrees());
        for s in 0..n {
            let _ = writeln!(out, "  s{s} [shape=point, label=\"{s}\"];");
        }
        for (j, p) in perms[..r - 1].iter().enumerate() {
            for (i, c) in p.cycles().iter().enumerate() {
                let _ = writeln!(out, "  c{j}_{i} [color={j}, degree={}];", c.len());
            }
        }
        for (j, p) in perms[..r - 1].iter().enumerate() {
            let mut owner = vec![0usize; n];
            for (i, c) in p.cycles().iter().enumerate() {
                for &x in c {
                    owner[x as usize] = i;
                }
            }
            for (s, &i) in owner.iter().enumerate() {
                let _ = writeln!(out, "  s{s} -- c{j}_{i} [color={j}];");
            }
        }
        for (i, c) in perms[r - 1].cycles().iter().enumerate() {
            let body: Vec<String> = c.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "  // face {i} degree {} sheets {}", c.len(), body.join(" "));
        }
        out.push_str("}\n");
        out
    }

    /// Cyclic shift of the branch points: `(σ_2, …, σ_r, σ_1)`.
    pub fn rotate(&self) -> Dessin {
        let mut perms = self.constellation.perms().to_vec();
        perms.rotate_left(1);
        Dessin::from_constellation(Constellation::new(perms).expect("same degree")).expect("still valid")
    }

    /// Reversed inverses `(σ_r⁻¹, …, σ_1⁻¹)`, the mirror image.
    pub fn reverse_inverse(&self) -> Dessin {
        let perms = self.constellation.perms().iter().rev().map(Perm::inverse).collect();
        Dessin::from_constellation(Constellation::new(perms).expect("same degree")).expect("still valid")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalForm {
    /// `relabel[x]` is the new label of point `x`.
    pub relabel: Vec<u32>,
    pub encoding: Vec<u32>,
    pub digest: String,
}

/// Labels points in breadth-first order from `seed`, following `σ_1, …, σ_r` in turn.
fn bfs_labeling(perms: &[Perm], seed: u32) -> Vec<u32> {
    let n = perms[0].degree();
    let mut label = vec![u32::MAX; n];
    let mut order = Vec::with_capacity(n);
    label[seed as usize] = 0;
    order.push(seed);
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for p in perms {
            let y = p.apply(x);
            if label[y as usize] == u32::MAX {
                label[y as usize] = order.len() as u32;
                order.push(y);
            }
        }
    }
    label
}

/// Image tables of the relabeled permutations, concatenated.
fn encode(perms: &[Perm], label: &[u32]) -> Vec<u32> {
    let n = label.len();
    let mut out = vec![0u32; perms.len() * n];
    for (j, p) in perms.iter().enumerate() {
        for x in 0..n {
            out[j * n + label[x] as usize] = label[p.apply(x as u32) as usize];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dessin(n: usize, s: &str) -> Dessin {
        Dessin::from_constellation(Constellation::parse(n, s).unwrap()).unwrap()
    }

    #[test]
    fn euler_counts() {
        let d = dessin(2, "(0 1) | (0 1)");
        assert_eq!(d.euler(), EulerCount { vertices: 3, edges: 2, faces: 1, chi: 2, genus: 0 });
        let d = dessin(3, "(0 1 2) | (0 1 2) | (0 1 2)");
        assert_eq!(d.euler(), EulerCount { vertices: 5, edges: 6, faces: 1, chi: 0, genus: 1 });
        assert_eq!(d.ram_type().unwrap(), RamData::from_entries(vec![vec![3], vec![3], vec![3]]).unwrap());
    }

    #[test]
    fn rejects_unverified() {
        let c = Constellation::parse(4, "(0 1) | (0 1)").unwrap();
        assert_eq!(Dessin::from_constellation(c), Err(DessinError::Unverified(Violation::Transitivity)));
        let c = Constellation::parse(3, "(0 1 2) | (0 1 2)").unwrap();
        assert_eq!(Dessin::from_constellation(c), Err(DessinError::Unverified(Violation::Product)));
    }

    #[test]
    fn dot_export_shape() {
        let d = dessin(2, "(0 1) | (0 1)");
        let dot = d.export_dot();
        assert_eq!(dot.lines().filter(|l| l.contains("[shape=point") || l.contains("[color=0, degree")).count(), 3);
        assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 2);
        assert_eq!(dot, d.export_dot());
        let d = dessin(3, "(0 1 2) | (0 1 2) | (0 1 2)");
        let dot = d.export_dot();
        assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 6);
        assert_eq!(dot.lines().filter(|l| l.contains("[shape=point") || l.contains(", degree=")).count(), 5);
    }

    #[test]
    fn digest_is_conjugation_invariant() {
        let d = dessin(5, "(0 1)(2 3 4) | (0 2)(1 3 4) | (0 4 1 2 3)");
        let g = Perm::parse(5, "(0 4 2)(1 3)").unwrap();
        let e = Dessin::from_constellation(d.constellation().conjugate_by(&g)).unwrap();
        assert_eq!(d.canonical_form().digest, e.canonical_form().digest);
        assert_eq!(d.canonical_form().encoding, e.canonical_form().encoding);
    }

    #[test]
    fn duality_moves_keep_genus() {
        let d = dessin(5, "(0 1)(2 3 4) | (0 2)(1 3 4) | (0 4 1 2 3)");
        assert_eq!(d.rotate().euler().genus, d.euler().genus);
        assert_eq!(d.reverse_inverse().euler().genus, d.euler().genus);
        assert_eq!(d.rotate().rotate().rotate(), d);
    }
}
