//! Regular tilings of the torus as lattice quotients of the planar hexagonal
//! or square tiling.

use serde::{Deserialize, Serialize};

use crate::ramcore::{is_euclidean, RamData, RamError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Hexagon,
    Square,
}

impl Shape {
    /// Graph distance from the origin polygon; hexagons use axial coordinates.
    pub fn norm(self, x: i64, y: i64) -> i64 {
        match self {
            Shape::Hexagon => (x.abs() + y.abs() + (x + y).abs()) / 2,
            Shape::Square => x.abs() + y.abs(),
        }
    }

    /// Tiling shape whose vertex/face structure carries a regular dessin of `base`.
    pub fn for_base(base: &[u32]) -> Option<Shape> {
        let mut b = base.to_vec();
        b.sort_unstable();
        match b.as_slice() {
            [3, 3, 3] | [2, 3, 6] | [2, 2, 2, 2] => Some(Shape::Hexagon),
            [2, 4, 4] => Some(Shape::Square),
            _ => None,
        }
    }
}

impl std::str::FromStr for Shape {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hexagon" | "hex" => Ok(Shape::Hexagon),
            "square" => Ok(Shape::Square),
            other => Err(format!("unknown shape '{other}'")),
        }
    }
}

/// Integer 2×2 matrix whose columns span the period lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeBasis {
    pub columns: [[i64; 2]; 2],
}

impl LatticeBasis {
    pub fn new(u: [i64; 2], v: [i64; 2]) -> Self {
        LatticeBasis { columns: [u, v] }
    }

    pub fn det(&self) -> i64 {
        let [u, v] = self.columns;
        u[0] * v[1] - u[1] * v[0]
    }

    pub fn column_lengths(&self) -> [f64; 2] {
        self.columns.map(|c| ((c[0] * c[0] + c[1] * c[1]) as f64).sqrt())
    }

    /// |cos| of the angle between the columns, in integer coordinates.
    pub fn angle_cosine(&self) -> f64 {
        let [u, v] = self.columns;
        let dot = (u[0] * v[0] + u[1] * v[1]) as f64;
        let [lu, lv] = self.column_lengths();
        (dot / (lu * lv)).abs()
    }

    /// Whether `(x, y)` is an integer combination of the columns.
    pub fn contains(&self, x: i64, y: i64) -> bool {
        let [u, v] = self.columns;
        let d = self.det();
        // adj(M)·(x, y) = det · coefficients
        let c0 = v[1] * x - v[0] * y;
        let c1 = -u[1] * x + u[0] * y;
        d != 0 && c0 % d == 0 && c1 % d == 0
    }

    /// Smallest graph norm of a nonzero lattice vector.
    pub fn min_norm(&self, shape: Shape) -> i64 {
        for d in 1.. {
            for x in -d..=d {
                for y in -d..=d {
                    if shape.norm(x, y) == d && self.contains(x, y) {
                        return d;
                    }
                }
            }
        }
        unreachable!()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusTiling {
    pub shape: Shape,
    pub basis: LatticeBasis,
    /// Euclidean base carried by the tiling, when one was requested.
    pub base: Option<Vec<u32>>,
}

impl TorusTiling {
    pub fn polygons(&self) -> i64 {
        self.basis.det()
    }

    /// Degree of the regular member whose faces are the polygons.
    pub fn regular_degree(&self) -> Option<i64> {
        self.base.as_ref().and_then(|b| b.last()).map(|&k| k as i64 * self.polygons())
    }
}

fn isqrt(n: u64) -> u64 {
    let mut a = (n as f64).sqrt() as u64;
    while a * a > n {
        a -= 1;
    }
    while (a + 1) * (a + 1) <= n {
        a += 1;
    }
    a
}

/// Period lattice with determinant `n` and columns of length about `√n`.
pub fn tile_torus(n: u64, shape: Shape) -> TorusTiling {
    assert!(n >= 1, "at least one polygon");
    let a = isqrt(n) as i64;
    let n = n as i64;
    let basis = if a * a == n {
        LatticeBasis::new([a, 0], [0, a])
    } else if (a + 1) * (a + 1) - n <= a {
        let k = (a + 1) * (a + 1) - n;
        LatticeBasis::new([a + 1, 1], [k, a + 1])
    } else {
        let k = n - a * a;
        LatticeBasis::new([a, 1], [-k, a])
    };
    TorusTiling { shape, basis, base: None }
}

pub fn tile_torus_for_base(n: u64, base: &[u32]) -> Result<TorusTiling, RamError> {
    let shape = Shape::for_base(base).ok_or_else(|| RamError::UnsupportedBase(base.to_vec()))?;
    let mut t = tile_torus(n, shape);
    t.base = Some(base.to_vec());
    Ok(t)
}

/// Largest `r` such that the radius-`r` disk of polygons maps injectively to the torus.
pub fn max_disk_radius(t: &TorusTiling) -> u64 {
    // two disk polygons differ by a vector of norm ≤ 2r, and every such vector occurs
    ((t.basis.min_norm(t.shape) - 1) / 2) as u64
}

/// Genus-0 data whose partitions have lcm equal to the base entries, slot by slot.
pub fn is_regular_spherical(data: &RamData, base: &[u32]) -> Result<bool, RamError> {
    match data.genus() {
        Ok(0) => {}
        Ok(_) => return Err(RamError::GenusRejected(crate::ramcore::GenusRejection { raw: data.raw_genus() })),
        Err(e) => return Err(e.into()),
    }
    if !is_euclidean(base) {
        return Err(RamError::UnsupportedBase(base.to_vec()));
    }
    if base.len() != data.branch_points() {
        return Err(RamError::SlotCountMismatch { base: base.len(), irregular: data.branch_points() });
    }
    Ok(data.partitions().iter().zip(base).all(|(p, &k)| p.lcm() == k))
}
