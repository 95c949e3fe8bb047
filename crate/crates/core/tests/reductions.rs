//! Composition reductions between tabulated families, checked on concrete members.

use hurwitz_core::ramcore::{parse_family, FamilySpec, RamData};
use hurwitz_core::transform::{compose, BaseMap};

fn slots(d: &RamData) -> Vec<Vec<u32>> {
    let mut v: Vec<Vec<u32>> = d.partitions().iter().map(|p| p.entries().to_vec()).collect();
    v.sort();
    v
}

fn place(p: &[&str]) -> Vec<String> {
    p.iter().map(|s| s.to_string()).collect()
}

/// Members of `source` at its first three valid degrees, composed with `g`,
/// are members of `target` up to slot order.
fn check(target: &str, source: &str, placement: &[&str], g: &BaseMap) {
    let target: FamilySpec = parse_family(target).unwrap();
    let source: FamilySpec = parse_family(source).unwrap();
    assert_eq!(target.genus().unwrap(), source.genus().unwrap());
    for n in source.valid_degrees().unwrap().iter().take(3) {
        let out = compose(&source.member(n).unwrap(), &place(placement), g).unwrap();
        let m = out.degree();
        assert_eq!(m, n * g.degree);
        assert!(target.valid_degrees().unwrap().contains(m), "{target} at {m}");
        assert_eq!(slots(&out), slots(&target.member(m).unwrap()), "{source} at {n} -> {target}");
    }
}

#[test]
fn square_base_reductions_through_x_squared() {
    let pairs = [
        ("[2*][2*][2*][1,1,4|2*]", "[2*][2*][1,1|2*][4|2*]"),
        ("[2*][2*][1,1|2*][3,3|2*]", "[1|2*][1|2*][3|2*][3|2*]"),
        ("[2*][2*][1,1,1,3|2*][4|2*]", "[1,1|2*][1,3|2*][4|2*][2*]"),
        ("[2*][2*][1,3|2*][1,3|2*]", "[1|2*][3|2*][1|2*][3|2*]"),
        ("[2*][2*][1,1,4|2*][1,3|2*]", "[1,4|2*][1|2*][1|2*][3|2*]"),
        ("[2*][2*][1^4|2*][6|2*]", "[1^2|2*][1^2|2*][6|2*][2*]"),
        ("[1,3,4|2*][2*][2*][1^2|2*]", "[1,3|2*][4|2*][1^2|2*][2*]"),
        ("[1^2,6|2*][2*][2*][1^2|2*]", "[1|2*][1,6|2*][1|2*][1|2*]"),
        ("[1,5|2*][2*][2*][1^2|2*]", "[1|2*][5|2*][1|2*][1|2*]"),
        ("[1^3,5|2*][2*][2*][2*]", "[1^2|2*][1,5|2*][2*][2*]"),
        ("[1^3,3,4|2*][2*][2*][2*]", "[1^3,3|2*][4|2*][2*][2*]"),
        ("[1^2,3^2|2*][2*][2*][2*]", "[1^2|2*][3^2|2*][2*][2*]"),
    ];
    for (target, source) in pairs {
        check(target, source, &["1", "-1", "i", "-i"], &BaseMap::square());
    }
}

#[test]
fn case_fifteen_from_case_two() {
    check("[2*][1,5|3*][6*]", "[1,5|3*][3*][3*]", &["1", "-1", "inf"], &BaseMap::square());
}

#[test]
fn hexagonal_regular_from_triangular_regular() {
    for k in [3u32, 6, 9] {
        let f = RamData::from_entries(vec![vec![3; k as usize / 3]; 3]).unwrap();
        let out = compose(&f, &place(&["inf", "1", "-1"]), &BaseMap::square()).unwrap();
        let expected =
            RamData::from_entries(vec![vec![2; k as usize], vec![3; 2 * k as usize / 3], vec![6; k as usize / 3]])
                .unwrap();
        assert_eq!(slots(&out), slots(&expected));
        assert_eq!(out.genus().unwrap(), 1);
    }
}
