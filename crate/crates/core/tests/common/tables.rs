//! Published tables of almost-regular families, transcribed entry by entry
//! as `(number, marking, family)`.

pub const GENUS_ONE: [(u32, &str, &str); 43] = [
    (1, "NR", "[3*][3*][3*]"),
    (2, "NR", "[3*][3*][1,5|3*]"),
    (3, "NE", "[3*][3*][2,4|3*]"),
    (4, "NR", "[1|3*][1|3*][7|3*]"),
    (5, "R1", "[1|3*][4|3*][4|3*]"),
    (6, "NR", "[2|3*][2|3*][5|3*]"),
    (7, "R4", "[3*][3*][1,1,7|3*]"),
    (8, "NR", "[3*][3*][1,2,6|3*]"),
    (9, "R5", "[3*][3*][1,4,4|3*]"),
    (10, "R6", "[3*][3*][2,2,5|3*]"),
    (11, "NR", "[3*][1,2|3*][6|3*]"),
    (12, "NR", "[2*][3*][6*]"),
    (13, "NR", "[1,3|2*][3*][6*]"),
    (14, "NR", "[3|2*][3*][3|6*]"),
    (15, "R2", "[2*][1,5|3*][6*]"),
    (16, "NR", "[2*][2,4|3*][6*]"),
    (17, "R24", "[1,1,4|2*][3*][6*]"),
    (18, "NR", "[2*][4*][4*]"),
    (19, "NR", "[1,3|2*][4*][4*]"),
    (20, "R24", "[1,1,4|2*][4*][4*]"),
    (21, "NR", "[2*][2*][2*][2*]"),
    (22, "NE", "[2*][2*][2*][1,3|2*]"),
    (23, "R24", "[2*][2*][2*][1,1,4|2*]"),
    (24, "NR", "[2*][2*][1,1|2*][4|2*]"),
    (25, "NR", "[1|2*][1|2*][1|2*][5|2*]"),
    (26, "R21", "[1|2*][1|2*][3|2*][3|2*]"),
    (27, "R26", "[2*][2*][1,1|2*][3,3|2*]"),
    (28, "R26", "[2*][2*][1,3|2*][1,3|2*]"),
    (29, "R25", "[1,5|2*][2*][2*][1^2|2*]"),
    (30, "R29", "[1^3,5|2*][2*][2*][2*]"),
    (31, "R27", "[1^2,3^2|2*][2*][2*][2*]"),
    (32, "R23", "[1|2*][1|2*][1,4|2*][3|2*]"),
    (33, "NR", "[2*][1,1|2*][1,1|2*][6|2*]"),
    (34, "R37", "[2*][2*][1,1,1,3|2*][4|2*]"),
    (35, "R32", "[2*][2*][1,1,4|2*][1,3|2*]"),
    (36, "R33", "[2*][2*][1^4|2*][6|2*]"),
    (37, "NR", "[2*][1,1|2*][1,3|2*][4|2*]"),
    (38, "R42", "[1^2,6|2*][2*][2*][1^2|2*]"),
    (39, "R36", "[1^4,6|2*][2*][2*][2*]"),
    (40, "R37", "[1,3,4|2*][2*][2*][1^2|2*]"),
    (41, "R34", "[1^3,3,4|2*][2*][2*][2*]"),
    (42, "NR", "[1,6|2*][1|2*][1|2*][1|2*]"),
    (43, "NR", "[3,4|2*][1|2*][1|2*][1|2*]"),
];

pub const GENUS_ZERO: [(u32, &str, &str); 62] = [
    (1, "NR", "[1|3*][1|3*][1|3*]"),
    (2, "R1", "[3*][3*][1,1,1|3*]"),
    (3, "NR", "[1|3*][1|3*][2,2|3*]"),
    (4, "NR", "[1,1|3*][2|3*][2|3*]"),
    (5, "NR", "[3*][1,2|3*][1,2|3*]"),
    (6, "R4", "[3*][3*][1,1,2,2|3*]"),
    (7, "NR", "[1|3*][1|3*][1,1,5|3*]"),
    (8, "NR", "[1|3*][1|3*][1,2,4|3*]"),
    (9, "NR", "[1|3*][1,1,2|3*][4|3*]"),
    (10, "NR", "[1|3*][2,2|3*][2,2|3*]"),
    (11, "NR", "[1,2,2|3*][2|3*][2|3*]"),
    (12, "R1", "[1,1|3*][1,4|3*][2|3*]"),
    (13, "NR", "[1,1|3*][1,1|3*][5|3*]"),
    (14, "R13", "[3*][3*][1^4,5|3*]"),
    (15, "R12", "[3*][3*][1^3,2,4|3*]"),
    (16, "R10", "[3*][3*][1,2^4|3*]"),
    (17, "NR", "[3*][1,1,4|3*][1,2|3*]"),
    (18, "NR", "[3*][1,2|3*][2^3|3*]"),
    (19, "NR", "[3*][1^3|3*][1,5|3*]"),
    (20, "NR", "[3*][1^3|3*][2,4|3*]"),
    (21, "NR", "[1|2*][1|3*][1|6*]"),
    (22, "R2", "[2*][1,1,1|3*][6*]"),
    (23, "R47", "[1^4|2*][3*][6*]"),
    (24, "R1", "[2*][1,1|3*][2|6*]"),
    (25, "NR", "[2*][2|3*][1,1|6*]"),
    (26, "NR", "[1|2*][3*][1,2|6*]"),
    (27, "NR", "[1,1|2*][1,2|3*][6*]"),
    (28, "NR", "[2*][1|3*][1,3|6*]"),
    (29, "NE", "[2*][1|3*][2,2|6*]"),
    (30, "R25", "[2*][3*][1,1,4|6*]"),
    (31, "NR", "[2*][3*][1,2,3|6*]"),
    (32, "R2", "[2*][3*][2,2,2|6*]"),
    (33, "R5", "[2*][1,1,2,2|3*][6*]"),
    (34, "NR", "[1|2*][2,2|3*][1|6*]"),
    (35, "NR", "[1,1|2*][2|3*][2|6*]"),
    (36, "R25", "[3|2*][3*][1^3|6*]"),
    (37, "R45", "[1^3|2*][3*][3|6*]"),
    (38, "NR", "[1|2*][1|4*][1|4*]"),
    (39, "R47", "[1^4|2*][4*][4*]"),
    (40, "NR", "[2*][4*][1,1,2|4*]"),
    (41, "R38", "[2*][2|4*][1,1|4*]"),
    (42, "NR", "[1,1|2*][4*][1,3|4*]"),
    (43, "R47", "[1,1|2*][4*][2,2|4*]"),
    (44, "R45", "[1,1|2*][2|4*][2|4*]"),
    (45, "NR", "[1|2*][1|2*][1|2*][1|2*]"),
    (46, "NR", "[2*][2*][2*][1^4|2*]"),
    (47, "R45", "[2*][2*][1,1|2*][1,1|2*]"),
    (48, "NR", "[1|2*][1|2*][1|2*][1,1,3|2*]"),
    (49, "R46", "[1|2*][1|2*][1^3|2*][3|2*]"),
    (50, "R48", "[2*][2*][1,1|2*][1^3,3|2*]"),
    (51, "R49", "[2*][2*][1^4|2*][1,3|2*]"),
    (52, "R45", "[2*][1,1|2*][1,1|2*][1,3|2*]"),
    (53, "NR", "[1^5,3|2*][2*][2*][2*]"),
    (54, "NR", "[1|2*][1|2*][1^3|2*][1,4|2*]"),
    (55, "R58", "[2*][2*][1^6|2*][4|2*]"),
    (56, "R59", "[2*][2*][1^4|2*][1,1,4|2*]"),
    (57, "NR", "[2*][1^2|2*][1^2|2*][1^2,4|2*]"),
    (58, "NR", "[2*][1,1|2*][1^4|2*][4|2*]"),
    (59, "NR", "[1^2|2*][1^2|2*][1^2|2*][4|2*]"),
    (60, "NR", "[1^4,4|2*][2*][2*][1^2|2*]"),
    (61, "NR", "[1^6,4|2*][2*][2*][2*]"),
    (62, "NR", "[1^3,4|2*][1|2*][1|2*][1|2*]"),
];

/// Table rows whose base is `base` (ascending), in table order.
pub fn rows<'a>(table: &'a [(u32, &'a str, &'a str)], base: &[u32]) -> Vec<(u32, &'a str, &'a str)> {
    table
        .iter()
        .copied()
        .filter(|(_, _, f)| {
            let fam = hurwitz_core::ramcore::parse_family(f).expect("table entry parses");
            let mut b = fam.base().to_vec();
            b.sort_unstable();
            b == base
        })
        .collect()
}
