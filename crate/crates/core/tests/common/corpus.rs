//! Witnesses for the smallest valid member of every tabulated family, found once per test binary.

use std::sync::OnceLock;

use hurwitz_core::permsearch::{realize, Constellation, SearchConfig, SearchOutcome};
use hurwitz_core::ramcore::{enumerate_families, FamilySpec, RamData, EUCLIDEAN_BASES};

pub struct Witness {
    pub family: FamilySpec,
    pub data: RamData,
    pub constellation: Constellation,
}

pub fn table_families() -> Vec<(u32, FamilySpec)> {
    let mut out = Vec::new();
    for genus in [0, 1] {
        for base in EUCLIDEAN_BASES {
            let eps = if base[0] == 2 && base.len() == 3 { 6 } else { 10 };
            for f in enumerate_families(base, genus, eps).unwrap() {
                out.push((genus, f));
            }
        }
    }
    out
}

pub fn witnesses() -> &'static [Witness] {
    static CORPUS: OnceLock<Vec<Witness>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let cfg = SearchConfig { budget: 2_000_000, ..SearchConfig::default() };
        let mut out = Vec::new();
        for (_, family) in table_families() {
            let degrees = family.valid_degrees().unwrap();
            for n in degrees.iter().take_while(|&n| n <= 12).take(2) {
                let data = family.member(n).unwrap();
                if let SearchOutcome::Witness { constellation, .. } = realize(&data, &cfg).unwrap() {
                    out.push(Witness { family: family.clone(), data, constellation });
                }
            }
        }
        out
    })
}
