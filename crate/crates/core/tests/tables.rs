mod common;

use common::tables::{rows, GENUS_ONE, GENUS_ZERO};
use hurwitz_core::ramcore::{enumerate_families, parse_family, FamilySpec};

const BASES: [(&[u32], u32); 4] = [(&[3, 3, 3], 10), (&[2, 3, 6], 6), (&[2, 4, 4], 6), (&[2, 2, 2, 2], 10)];

fn canonical(entries: &[(u32, &str, &str)]) -> Vec<FamilySpec> {
    let mut out: Vec<FamilySpec> = entries
        .iter()
        .map(|(_, _, f)| {
            let fam = parse_family(f).unwrap();
            // the table writes [2*][3*][6*] bases in that slot order already
            let mut order: Vec<usize> = (0..fam.slots()).collect();
            order.sort_by_key(|&i| fam.base()[i]);
            fam.permuted(&order).canonical()
        })
        .collect();
    out.sort();
    out
}

fn check(genus: u32, table: &[(u32, &str, &str)], sizes: [usize; 4]) {
    for ((base, eps), size) in BASES.iter().zip(sizes) {
        let expected = canonical(&rows(table, base));
        let got = enumerate_families(base, genus, *eps).unwrap();
        assert_eq!(got.len(), size, "{base:?}");
        assert_eq!(got, expected, "{base:?} genus {genus}");
    }
}

#[test]
fn genus_one_table_matches() {
    check(1, &GENUS_ONE, [11, 6, 3, 23]);
}

#[test]
fn genus_zero_table_matches() {
    check(0, &GENUS_ZERO, [20, 17, 7, 18]);
}

#[test]
fn table_entries_have_stated_genus() {
    for (id, _, f) in GENUS_ONE {
        assert_eq!(parse_family(f).unwrap().genus(), Ok(1), "entry {id}");
    }
    for (id, _, f) in GENUS_ZERO {
        assert_eq!(parse_family(f).unwrap().genus(), Ok(0), "entry {id}");
    }
}

#[test]
fn genus_zero_families_have_nonzero_error() {
    for (base, eps) in BASES {
        for f in enumerate_families(base, 0, eps).unwrap() {
            assert!(f.error() > 0, "{f}");
        }
    }
}

#[test]
fn equal_slot_permutations_do_not_change_output() {
    assert_eq!(enumerate_families(&[4, 2, 4], 0, 6).unwrap(), enumerate_families(&[2, 4, 4], 0, 6).unwrap());
    assert_eq!(enumerate_families(&[6, 3, 2], 1, 6).unwrap(), enumerate_families(&[2, 3, 6], 1, 6).unwrap());
}
