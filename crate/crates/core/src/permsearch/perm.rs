use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ramcore::Partition;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("image table is not a bijection of 0..{0}")]
    NotBijection(usize),
    #[error("point {point} out of range for degree {degree}")]
    OutOfRange { point: u32, degree: usize },
    #[error("degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("cycle notation error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("not a fixed-point-free involution")]
    NotFixedPointFreeInvolution,
}

/// Bijection of `{0..n−1}` given by its image table.
///
/// Composition is right-to-left: `p.compose(&q)` is `p∘q`, which applies `q` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Perm {
    images: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Perm {
    type Error = PermError;
    fn try_from(v: Vec<u32>) -> Result<Self, Self::Error> {
        Perm::from_images(v)
    }
}

impl From<Perm> for Vec<u32> {
    fn from(p: Perm) -> Self {
        p.images
    }
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { images: (0..n as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Perm, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(PermError::NotBijection(n));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Perm {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images }
    }

    /// Each cycle `(c_0 c_1 … c_{l−1})` maps `c_i ↦ c_{i+1}`.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Perm, PermError> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = vec![false; n];
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                if x as usize >= n {
                    return Err(PermError::OutOfRange { point: x, degree: n });
                }
                if touched[x as usize] {
                    return Err(PermError::NotBijection(n));
                }
                touched[x as usize] = true;
                images[x as usize] = c[(i + 1) % c.len()];
            }
        }
        Ok(Perm { images })
    }

    /// Parses cycle notation such as `(0 1)(2 3 4)`; `()` is the identity.
    pub fn parse(n: usize, text: &str) -> Result<Perm, PermError> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let mut cycles = Vec::new();
        let err = |pos: usize, msg: &str| PermError::Parse { pos, msg: msg.to_string() };
        loop {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos == bytes.len() {
                break;
            }
            if bytes[pos] != b'(' {
                return Err(err(pos, "expected '('"));
            }
            pos += 1;
            let mut cycle = Vec::new();
            loop {
                while pos < bytes.len() && (bytes[pos].is_ascii_whitespace() || bytes[pos] == b',') {
                    pos += 1;
                }
                match bytes.get(pos) {
                    Some(b')') => {
                        pos += 1;
                        break;
                    }
                    Some(c) if c.is_ascii_digit() => {
                        let start = pos;
                        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                            pos += 1;
                        }
                        let v: u32 = text[start..pos].parse().map_err(|_| err(start, "number too large"))?;
                        if v as usize >= n {
                            return Err(err(start, "point out of range"));
                        }
                        cycle.push(v);
                    }
                    Some(_) => return Err(err(pos, "unexpected character")),
                    None => return Err(err(pos, "unterminated cycle")),
                }
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
        }
        Perm::from_cycles(n, &cycles).map_err(|_| err(0, "a point occurs twice"))
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in composition");
        Perm { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut result = Perm::identity(self.degree());
        for _ in 0..e.unsigned_abs() {
            result = result.compose(&base);
        }
        result
    }

    /// `g ∘ self ∘ g⁻¹`, the relabeling of `self` along `g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        let mut images = vec![0u32; self.degree()];
        for x in 0..self.degree() {
            images[g.images[x] as usize] = g.images[self.images[x] as usize];
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &x)| i as u32 == x).count()
    }

    /// All cycles including fixed points, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                c.push(x as u32);
                x = self.images[x] as usize;
            }
            out.push(c);
        }
        out
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles().len()
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::new(self.cycles().iter().map(|c| c.len() as u32).collect()).expect("degree ≥ 1")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let body: Vec<String> = c.iter().map(u32::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Cycle type of `x∘y` for fixed-point-free involutions `x`, `y`.
pub fn involution_product_profile(x: &Perm, y: &Perm) -> Result<Partition, PermError> {
    if x.degree() != y.degree() {
        return Err(PermError::DegreeMismatch(x.degree(), y.degree()));
    }
    for p in [x, y] {
        let fpf_involution =
            p.images.iter().enumerate().all(|(i, &j)| j as usize != i && p.images[j as usize] as usize == i);
        if p.degree() == 0 || !fpf_involution {
            return Err(PermError::NotFixedPointFreeInvolution);
        }
    }
    Ok(x.compose(y).cycle_type())
}
